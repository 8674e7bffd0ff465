#include "tng/core/device_name.hpp"

#include "tng/core/errors.hpp"
#include "tng/core/reasons.hpp"

#include <algorithm>
#include <cctype>

namespace tng {

std::string to_lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool iequals(std::string_view a, std::string_view b) noexcept
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

namespace {

bool valid_part(std::string_view p) noexcept
{
    if (p.empty())
        return false;
    return std::none_of(p.begin(), p.end(), [](unsigned char c) { return c == '/' || std::isspace(c) || c < 0x20; });
}

} // namespace

bool DeviceName::is_valid(std::string_view text) noexcept
{
    auto a = text.find('/');
    if (a == std::string_view::npos)
        return false;
    auto b = text.find('/', a + 1);
    if (b == std::string_view::npos || text.find('/', b + 1) != std::string_view::npos)
        return false;
    return valid_part(text.substr(0, a)) && valid_part(text.substr(a + 1, b - a - 1)) && valid_part(text.substr(b + 1));
}

DeviceName DeviceName::parse(std::string_view text)
{
    if (!is_valid(text))
        throw_dev_failed(reason::MalformedName, "'" + std::string(text) + "' is not a domain/family/member name",
                         "parse_device_name");
    auto a = text.find('/');
    auto b = text.find('/', a + 1);
    return DeviceName(to_lower(text.substr(0, a)), to_lower(text.substr(a + 1, b - a - 1)),
                      to_lower(text.substr(b + 1)));
}

} // namespace tng
