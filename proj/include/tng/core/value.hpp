#pragma once

#include "tng/core/errors.hpp"
#include "tng/core/types.hpp"

#include <cstdint>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace tng {

struct Void {
    bool operator==(const Void&) const = default;
};

struct LongStringArray {
    std::vector<std::int32_t> longs;
    std::vector<std::string> strings;
    bool operator==(const LongStringArray&) const = default;
};

struct DoubleStringArray {
    std::vector<double> doubles;
    std::vector<std::string> strings;
    bool operator==(const DoubleStringArray&) const = default;
};

// Alternative index == TypeTag code.
using ValueStorage = std::variant<Void,
                                  bool,
                                  std::int16_t,
                                  std::int32_t,
                                  float,
                                  double,
                                  std::uint16_t,
                                  std::uint32_t,
                                  std::string,
                                  std::vector<bool>,
                                  std::vector<std::int16_t>,
                                  std::vector<std::int32_t>,
                                  std::vector<float>,
                                  std::vector<double>,
                                  std::vector<std::uint16_t>,
                                  std::vector<std::uint32_t>,
                                  std::vector<std::string>,
                                  LongStringArray,
                                  DoubleStringArray,
                                  DeviceState>;

static_assert(std::variant_size_v<ValueStorage> == kTypeTagCount);

namespace detail {
template <class T, class V>
struct is_alternative;
template <class T, class... Ts>
struct is_alternative<T, std::variant<Ts...>> : std::disjunction<std::is_same<T, Ts>...> {};
} // namespace detail

template <class T>
concept ValueAlternative = detail::is_alternative<std::remove_cvref_t<T>, ValueStorage>::value;

template <TypeTag Tag>
using value_type_t = std::variant_alternative_t<code_of(Tag), ValueStorage>;

// The universal command argument/result carrier.
class TangoValue {
public:
    TangoValue() = default;

    template <ValueAlternative T>
    TangoValue(T&& v) : storage_(std::forward<T>(v)) {}

    TangoValue(const char* s) : storage_(std::string(s)) {}

    TypeTag tag() const noexcept { return static_cast<TypeTag>(storage_.index()); }
    bool is_void() const noexcept { return tag() == TypeTag::DevVoid; }

    const ValueStorage& storage() const noexcept { return storage_; }

    template <ValueAlternative T>
    const T* get_if() const noexcept { return std::get_if<T>(&storage_); }

    /// Typed access; throws WRONG_VALUE_TYPE on mismatch.
    template <ValueAlternative T>
    const T& get() const
    {
        if (const T* p = std::get_if<T>(&storage_))
            return *p;
        throw_wrong_type(static_cast<TypeTag>(ValueStorage(T{}).index()));
    }

    /// Zero / empty value of the given tag.
    static TangoValue default_for(TypeTag tag);

    bool operator==(const TangoValue&) const = default;

private:
    [[noreturn]] void throw_wrong_type(TypeTag wanted) const;

    ValueStorage storage_;
};

inline TypeTag type_tag(const TangoValue& v) { return v.tag(); }

inline bool check_value_against_tag(const TangoValue& v, TypeTag expected) { return v.tag() == expected; }

bool is_valid_utf8(std::string_view s) noexcept;

/// Human-readable rendering for logs and CLI output.
std::string to_display_string(const TangoValue& v);

} // namespace tng
