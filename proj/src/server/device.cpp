#include "tng/server/device.hpp"

#include "tng/core/reasons.hpp"
#include "tng/server/device_class.hpp"

#include <charconv>

namespace tng::server {

namespace {

[[noreturn]] void bad_property(const std::string& name, const std::string& why)
{
    throw_dev_failed(reason::PropertyParseFailed, "property " + name + ": " + why, "PropertyBag");
}

template <class T>
T parse_number(const std::string& name, const std::string& text)
{
    T v{};
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size())
        bad_property(name, "'" + text + "' is not a number");
    return v;
}

} // namespace

void PropertyBag::set(const std::string& name, std::vector<std::string> values)
{
    values_[to_lower(name)] = std::move(values);
}

bool PropertyBag::has(const std::string& name) const
{
    return values_.count(to_lower(name)) > 0;
}

std::vector<std::string> PropertyBag::names() const
{
    std::vector<std::string> out;
    for (const auto& [k, v] : values_)
        out.push_back(k);
    return out;
}

const std::vector<std::string>& PropertyBag::raw(const std::string& name) const
{
    auto it = values_.find(to_lower(name));
    if (it == values_.end())
        bad_property(name, "not defined");
    return it->second;
}

std::string PropertyBag::get_string(const std::string& name) const
{
    const auto& v = raw(name);
    if (v.size() != 1)
        bad_property(name, "expected one value, found " + std::to_string(v.size()));
    return v.front();
}

std::int64_t PropertyBag::get_integer(const std::string& name) const
{
    return parse_number<std::int64_t>(name, get_string(name));
}

double PropertyBag::get_float(const std::string& name) const
{
    return parse_number<double>(name, get_string(name));
}

std::vector<std::string> PropertyBag::get_string_list(const std::string& name) const
{
    return raw(name);
}

std::vector<std::int64_t> PropertyBag::get_integer_list(const std::string& name) const
{
    std::vector<std::int64_t> out;
    for (const auto& s : raw(name))
        out.push_back(parse_number<std::int64_t>(name, s));
    return out;
}

std::vector<double> PropertyBag::get_float_list(const std::string& name) const
{
    std::vector<double> out;
    for (const auto& s : raw(name))
        out.push_back(parse_number<double>(name, s));
    return out;
}

Device::Device(DeviceClass& cls, DeviceName name) : class_(cls), name_(std::move(name)) {}

std::string Device::dev_status()
{
    auto s = get_status();
    if (s.empty())
        return "The device is in " + std::string(to_string(get_state())) + " state.";
    return s;
}

std::string Device::get_status() const
{
    std::lock_guard l(status_mutex_);
    return status_;
}

void Device::set_status(std::string s)
{
    std::lock_guard l(status_mutex_);
    status_ = std::move(s);
}

} // namespace tng::server
