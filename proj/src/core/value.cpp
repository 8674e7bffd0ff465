#include "tng/core/value.hpp"

#include "tng/core/reasons.hpp"

#include <sstream>

namespace tng {

namespace {

template <std::size_t... I>
TangoValue default_by_index(std::size_t idx, std::index_sequence<I...>)
{
    TangoValue out;
    ((idx == I ? (out = TangoValue(std::variant_alternative_t<I, ValueStorage>{}), 0) : 0), ...);
    return out;
}

template <class T>
void put_scalar(std::ostringstream& os, const T& v)
{
    if constexpr (std::is_same_v<T, bool>)
        os << (v ? "true" : "false");
    else if constexpr (std::is_same_v<T, std::string>)
        os << '"' << v << '"';
    else if constexpr (std::is_same_v<T, std::int16_t> || std::is_same_v<T, std::uint16_t>)
        os << static_cast<int>(v);
    else
        os << v;
}

template <class T>
void put_seq(std::ostringstream& os, const std::vector<T>& v)
{
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            os << ", ";
        put_scalar<T>(os, v[i]);
    }
    os << ']';
}

} // namespace

TangoValue TangoValue::default_for(TypeTag tag)
{
    return default_by_index(code_of(tag), std::make_index_sequence<kTypeTagCount>{});
}

void TangoValue::throw_wrong_type(TypeTag wanted) const
{
    throw_dev_failed(reason::WrongValueType,
                     "value holds " + std::string(to_string(tag())) + ", expected " + std::string(to_string(wanted)),
                     "TangoValue::get");
}

bool is_valid_utf8(std::string_view s) noexcept
{
    std::size_t i = 0;
    const auto n = s.size();
    while (i < n) {
        auto c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            ++i;
            continue;
        }
        std::size_t len;
        std::uint32_t cp;
        if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + len > n)
            return false;
        for (std::size_t k = 1; k < len; ++k) {
            auto cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80)
                return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        // overlong forms, surrogates, out of range
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
            (cp >= 0xD800 && cp <= 0xDFFF))
            return false;
        i += len;
    }
    return true;
}

std::string to_display_string(const TangoValue& v)
{
    std::ostringstream os;
    os << to_string(v.tag());
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Void>) {
            } else if constexpr (std::is_same_v<T, DeviceState>) {
                os << ' ' << to_string(x);
            } else if constexpr (std::is_same_v<T, LongStringArray>) {
                os << ' ';
                put_seq(os, x.longs);
                os << ' ';
                put_seq(os, x.strings);
            } else if constexpr (std::is_same_v<T, DoubleStringArray>) {
                os << ' ';
                put_seq(os, x.doubles);
                os << ' ';
                put_seq(os, x.strings);
            } else if constexpr (requires { x.size(); typename T::value_type; } && !std::is_same_v<T, std::string>) {
                os << ' ';
                put_seq(os, x);
            } else {
                os << ' ';
                put_scalar(os, x);
            }
        },
        v.storage());
    return os.str();
}

} // namespace tng
