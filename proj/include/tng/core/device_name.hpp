#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace tng {

// Three-part "domain/family/member" name. Stored lowercase, so comparison is
// case-insensitive by construction.
class DeviceName {
public:
    DeviceName() = default;

    /// Throws MALFORMED_NAME.
    static DeviceName parse(std::string_view text);
    static bool is_valid(std::string_view text) noexcept;

    const std::string& domain() const noexcept { return domain_; }
    const std::string& family() const noexcept { return family_; }
    const std::string& member() const noexcept { return member_; }

    std::string str() const { return domain_ + '/' + family_ + '/' + member_; }
    bool empty() const noexcept { return domain_.empty(); }

    auto operator<=>(const DeviceName&) const = default;

private:
    DeviceName(std::string d, std::string f, std::string m)
        : domain_(std::move(d)), family_(std::move(f)), member_(std::move(m)) {}

    std::string domain_;
    std::string family_;
    std::string member_;
};

inline DeviceName parse_device_name(std::string_view text) { return DeviceName::parse(text); }

std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b) noexcept;

} // namespace tng
