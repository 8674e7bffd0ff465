#include "tng/wire/codec.hpp"

#include "tng/core/reasons.hpp"

#include <bit>
#include <cstring>

namespace tng::wire {

namespace {

constexpr const char* kOrigin = "wire::codec";

[[noreturn]] void fail(std::string_view reason, std::string what) { throw_dev_failed(reason, std::move(what), kOrigin); }

std::size_t str_size(const std::string& s) { return 4 + s.size(); }

std::size_t strings_size(const std::vector<std::string>& v)
{
    std::size_t n = 4;
    for (const auto& s : v)
        n += str_size(s);
    return n;
}

template <class T>
std::size_t fixed_width()
{
    if constexpr (std::is_same_v<T, bool>)
        return 1;
    else
        return sizeof(T);
}

template <class T>
void put(Writer& w, const T& v)
{
    if constexpr (std::is_same_v<T, bool>)
        w.u8(v ? 1 : 0);
    else if constexpr (std::is_same_v<T, std::int16_t>)
        w.i16(v);
    else if constexpr (std::is_same_v<T, std::uint16_t>)
        w.u16(v);
    else if constexpr (std::is_same_v<T, std::int32_t>)
        w.i32(v);
    else if constexpr (std::is_same_v<T, std::uint32_t>)
        w.u32(v);
    else if constexpr (std::is_same_v<T, float>)
        w.f32(v);
    else if constexpr (std::is_same_v<T, double>)
        w.f64(v);
    else if constexpr (std::is_same_v<T, std::string>)
        w.str(v);
    else
        static_assert(sizeof(T) == 0, "unsupported element");
}

template <class T>
T get(Reader& r)
{
    if constexpr (std::is_same_v<T, bool>)
        return r.boolean();
    else if constexpr (std::is_same_v<T, std::int16_t>)
        return r.i16();
    else if constexpr (std::is_same_v<T, std::uint16_t>)
        return r.u16();
    else if constexpr (std::is_same_v<T, std::int32_t>)
        return r.i32();
    else if constexpr (std::is_same_v<T, std::uint32_t>)
        return r.u32();
    else if constexpr (std::is_same_v<T, float>)
        return r.f32();
    else if constexpr (std::is_same_v<T, double>)
        return r.f64();
    else if constexpr (std::is_same_v<T, std::string>)
        return r.str();
    else
        static_assert(sizeof(T) == 0, "unsupported element");
}

template <class T>
void put_seq(Writer& w, const std::vector<T>& v)
{
    w.count(v.size());
    for (const auto& e : v)
        put<T>(w, static_cast<T>(e));
}

template <class T>
std::vector<T> get_seq(Reader& r)
{
    const std::size_t min_width = std::is_same_v<T, std::string> ? 4 : fixed_width<T>();
    const std::size_t n = r.count(min_width);
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(get<T>(r));
    return out;
}

template <class T>
struct is_vector : std::false_type {};
template <class T>
struct is_vector<std::vector<T>> : std::true_type {};

template <std::size_t I>
TangoValue decode_alt(Reader& r)
{
    using T = std::variant_alternative_t<I, ValueStorage>;
    if constexpr (std::is_same_v<T, Void>) {
        return TangoValue(Void{});
    } else if constexpr (std::is_same_v<T, DeviceState>) {
        auto code = r.u8();
        if (code >= kDeviceStateCount)
            fail(reason::BadValue, "device state code " + std::to_string(code) + " out of range");
        return TangoValue(static_cast<DeviceState>(code));
    } else if constexpr (std::is_same_v<T, LongStringArray>) {
        LongStringArray m;
        m.longs = get_seq<std::int32_t>(r);
        m.strings = get_seq<std::string>(r);
        return TangoValue(std::move(m));
    } else if constexpr (std::is_same_v<T, DoubleStringArray>) {
        DoubleStringArray m;
        m.doubles = get_seq<double>(r);
        m.strings = get_seq<std::string>(r);
        return TangoValue(std::move(m));
    } else if constexpr (is_vector<T>::value) {
        return TangoValue(get_seq<typename T::value_type>(r));
    } else {
        return TangoValue(get<T>(r));
    }
}

template <std::size_t... I>
TangoValue decode_dispatch(std::size_t tag, Reader& r, std::index_sequence<I...>)
{
    using Fn = TangoValue (*)(Reader&);
    static constexpr Fn table[] = {&decode_alt<I>...};
    return table[tag](r);
}

} // namespace

void Writer::f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
void Writer::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void Writer::str(std::string_view s)
{
    if (!is_valid_utf8(s))
        fail(reason::BadUtf8, "string is not valid UTF-8");
    count(s.size());
    out_.insert(out_.end(), s.begin(), s.end());
}

void Writer::count(std::size_t n)
{
    if (n > kMaxFrameBytes)
        fail(reason::ValueTooLarge, "count " + std::to_string(n) + " exceeds frame cap");
    u32(static_cast<std::uint32_t>(n));
}

void Reader::need(std::size_t n, std::string_view what)
{
    if (remaining() < n)
        fail(reason::Truncated, "need " + std::to_string(n) + " bytes for " + std::string(what) + ", have " +
                                    std::to_string(remaining()));
}

std::uint8_t Reader::u8()
{
    need(1, "byte");
    return in_[pos_++];
}

float Reader::f32() { return std::bit_cast<float>(u32()); }
double Reader::f64() { return std::bit_cast<double>(u64()); }

bool Reader::boolean()
{
    auto b = u8();
    if (b > 1)
        fail(reason::BadValue, "boolean byte " + std::to_string(b));
    return b == 1;
}

std::string Reader::str()
{
    const std::uint32_t n = u32();
    need(n, "string body");
    std::string s(reinterpret_cast<const char*>(in_.data() + pos_), n);
    pos_ += n;
    if (!is_valid_utf8(s))
        fail(reason::BadUtf8, "string is not valid UTF-8");
    return s;
}

std::size_t Reader::count(std::size_t min_element_bytes)
{
    const std::uint32_t n = u32();
    if (static_cast<std::uint64_t>(n) * min_element_bytes > remaining())
        fail(reason::LengthOverflow,
             "declared count " + std::to_string(n) + " exceeds remaining " + std::to_string(remaining()) + " bytes");
    return n;
}

std::span<const std::uint8_t> Reader::rest()
{
    auto out = in_.subspan(pos_);
    pos_ = in_.size();
    return out;
}

void Reader::expect_end(std::string_view what) const
{
    if (!at_end())
        fail(reason::TrailingBytes, std::to_string(remaining()) + " unexpected bytes after " + std::string(what));
}

std::size_t encoded_size(const TangoValue& v)
{
    return 1 + std::visit(
                   [](const auto& x) -> std::size_t {
                       using T = std::decay_t<decltype(x)>;
                       if constexpr (std::is_same_v<T, Void>)
                           return 0;
                       else if constexpr (std::is_same_v<T, DeviceState>)
                           return 1;
                       else if constexpr (std::is_same_v<T, std::string>)
                           return str_size(x);
                       else if constexpr (std::is_same_v<T, std::vector<std::string>>)
                           return strings_size(x);
                       else if constexpr (std::is_same_v<T, LongStringArray>)
                           return 4 + 4 * x.longs.size() + strings_size(x.strings);
                       else if constexpr (std::is_same_v<T, DoubleStringArray>)
                           return 4 + 8 * x.doubles.size() + strings_size(x.strings);
                       else if constexpr (is_vector<T>::value)
                           return 4 + fixed_width<typename T::value_type>() * x.size();
                       else
                           return fixed_width<T>();
                   },
                   v.storage());
}

void encode_value(Writer& w, const TangoValue& v)
{
    w.u8(code_of(v.tag()));
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Void>) {
            } else if constexpr (std::is_same_v<T, DeviceState>) {
                w.u8(static_cast<std::uint8_t>(x));
            } else if constexpr (std::is_same_v<T, LongStringArray>) {
                put_seq(w, x.longs);
                put_seq(w, x.strings);
            } else if constexpr (std::is_same_v<T, DoubleStringArray>) {
                put_seq(w, x.doubles);
                put_seq(w, x.strings);
            } else if constexpr (is_vector<T>::value) {
                put_seq(w, x);
            } else {
                put<T>(w, x);
            }
        },
        v.storage());
}

Bytes encode_value(const TangoValue& v)
{
    const auto size = encoded_size(v);
    if (size > kMaxFrameBytes)
        fail(reason::ValueTooLarge, "encoded value of " + std::to_string(size) + " bytes exceeds the frame cap");
    Bytes out;
    out.reserve(size);
    Writer w(out);
    encode_value(w, v);
    return out;
}

TangoValue decode_value(Reader& r)
{
    const auto tag = r.u8();
    if (tag >= kTypeTagCount)
        fail(reason::BadTag, "type tag " + std::to_string(tag) + " out of range");
    return decode_dispatch(tag, r, std::make_index_sequence<kTypeTagCount>{});
}

DecodedValue decode_value(std::span<const std::uint8_t> bytes)
{
    Reader r(bytes);
    auto v = decode_value(r);
    return DecodedValue{std::move(v), r.position()};
}

} // namespace tng::wire
