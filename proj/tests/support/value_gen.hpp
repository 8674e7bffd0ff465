#pragma once

// Random value generators for property tests. Independent of the codec.

#include "tng/core/attribute.hpp"
#include "tng/core/value.hpp"

#include <random>
#include <string>
#include <vector>

namespace tng::testing {

class ValueGen {
public:
    explicit ValueGen(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    std::size_t size(std::size_t max) { return std::uniform_int_distribution<std::size_t>(0, max)(rng_); }

    template <class T>
    T integer()
    {
        return static_cast<T>(std::uniform_int_distribution<long long>(std::numeric_limits<T>::min(),
                                                                      std::numeric_limits<T>::max())(rng_));
    }

    std::uint32_t u32() { return static_cast<std::uint32_t>(rng_()); }

    double real()
    {
        switch (size(4)) {
        case 0: return 0.0;
        case 1: return std::uniform_real_distribution<double>(-1.0, 1.0)(rng_);
        case 2: return std::uniform_real_distribution<double>(-1e300, 1e300)(rng_);
        case 3: return static_cast<double>(integer<std::int32_t>()) / 8.0;
        default: return -std::uniform_real_distribution<double>(1e-300, 1e-290)(rng_);
        }
    }

    float real32() { return static_cast<float>(std::uniform_real_distribution<double>(-3.0e38, 3.0e38)(rng_) *
                                               (size(1) ? 1.0 : 1e-30)); }

    // Mix of ASCII, two-, three- and four-byte sequences.
    std::string text(std::size_t max_chars = 12)
    {
        static const char* pieces[] = {"a", "Z", "0", " ", "/", "\"", "\\", "\n", "\xC3\xA9", "\xE2\x82\xAC",
                                       "\xF0\x9F\x98\x80", "{", "%", "\t"};
        std::string s;
        auto n = size(max_chars);
        for (std::size_t i = 0; i < n; ++i)
            s += pieces[size(std::size(pieces) - 1)];
        return s;
    }

    template <class T>
    T element()
    {
        if constexpr (std::is_same_v<T, bool>)
            return size(1) == 1;
        else if constexpr (std::is_same_v<T, float>)
            return real32();
        else if constexpr (std::is_same_v<T, double>)
            return real();
        else if constexpr (std::is_same_v<T, std::string>)
            return text();
        else
            return integer<T>();
    }

    template <class T>
    std::vector<T> seq(std::size_t max_len)
    {
        std::vector<T> v;
        auto n = size(max_len);
        for (std::size_t i = 0; i < n; ++i)
            v.push_back(element<T>());
        return v;
    }

    TangoValue value(TypeTag tag, std::size_t max_len = 16);

    TangoValue any_value(std::size_t max_len = 16)
    {
        return value(static_cast<TypeTag>(size(kTypeTagCount - 1)), max_len);
    }

    AttributeValue attribute(const std::string& name, AttrElementType t, AttrFormat f, std::uint32_t max_x,
                             std::uint32_t max_y);

private:
    template <std::size_t I>
    TangoValue value_at(std::size_t max_len);
    template <std::size_t... I>
    TangoValue value_dispatch(std::size_t i, std::size_t max_len, std::index_sequence<I...>);

    std::mt19937_64 rng_;
};

template <std::size_t I>
TangoValue ValueGen::value_at(std::size_t max_len)
{
    using T = std::variant_alternative_t<I, ValueStorage>;
    if constexpr (std::is_same_v<T, Void>)
        return TangoValue(Void{});
    else if constexpr (std::is_same_v<T, DeviceState>)
        return TangoValue(static_cast<DeviceState>(size(kDeviceStateCount - 1)));
    else if constexpr (std::is_same_v<T, LongStringArray>)
        return TangoValue(LongStringArray{seq<std::int32_t>(max_len), seq<std::string>(max_len)});
    else if constexpr (std::is_same_v<T, DoubleStringArray>)
        return TangoValue(DoubleStringArray{seq<double>(max_len), seq<std::string>(max_len)});
    else if constexpr (requires { typename T::value_type; } && !std::is_same_v<T, std::string>)
        return TangoValue(seq<typename T::value_type>(max_len));
    else
        return TangoValue(element<T>());
}

template <std::size_t... I>
TangoValue ValueGen::value_dispatch(std::size_t i, std::size_t max_len, std::index_sequence<I...>)
{
    TangoValue out;
    ((i == I ? (out = value_at<I>(max_len), 0) : 0), ...);
    return out;
}

inline TangoValue ValueGen::value(TypeTag tag, std::size_t max_len)
{
    return value_dispatch(code_of(tag), max_len, std::make_index_sequence<kTypeTagCount>{});
}

inline AttributeValue ValueGen::attribute(const std::string& name, AttrElementType t, AttrFormat f,
                                          std::uint32_t max_x, std::uint32_t max_y)
{
    std::uint32_t dx = 1, dy = 0;
    if (f == AttrFormat::Spectrum)
        dx = static_cast<std::uint32_t>(size(max_x));
    if (f == AttrFormat::Image) {
        dx = static_cast<std::uint32_t>(1 + size(max_x - 1));
        dy = static_cast<std::uint32_t>(1 + size(max_y - 1));
    }
    const std::size_t n = static_cast<std::size_t>(dx) * std::max<std::uint32_t>(dy, 1);
    AttrData d;
    auto fill = [&](auto tag) {
        using T = decltype(tag);
        std::vector<T> v;
        for (std::size_t i = 0; i < n; ++i)
            v.push_back(element<T>());
        d = std::move(v);
    };
    switch (t) {
    case AttrElementType::DevShort: fill(std::int16_t{}); break;
    case AttrElementType::DevLong: fill(std::int32_t{}); break;
    case AttrElementType::DevDouble: fill(double{}); break;
    case AttrElementType::DevString: fill(std::string{}); break;
    }
    return AttributeValue(name, std::move(d), dx, dy);
}

} // namespace tng::testing
