#include "tng/server/device_class.hpp"

#include "tng/core/reasons.hpp"

#include <algorithm>

namespace tng::server {

std::string_view to_string(PropertyType t)
{
    switch (t) {
    case PropertyType::String: return "String";
    case PropertyType::Integer: return "Integer";
    case PropertyType::Float: return "Float";
    case PropertyType::StringList: return "StringList";
    case PropertyType::IntegerList: return "IntegerList";
    case PropertyType::FloatList: return "FloatList";
    }
    return "?";
}

DeviceClass::DeviceClass(std::string name, DeviceFactory factory, std::string description)
    : name_(std::move(name)), description_(std::move(description)), factory_(std::move(factory))
{
    commands_.push_back({CommandInfo{kStateCommand, TypeTag::DevVoid, TypeTag::DevState, "Device state", {}},
                         [](Device& d, const TangoValue&) { return TangoValue(d.dev_state()); }});
    commands_.push_back({CommandInfo{kStatusCommand, TypeTag::DevVoid, TypeTag::DevString, "Device status", {}},
                         [](Device& d, const TangoValue&) { return TangoValue(d.dev_status()); }});
    // Init is executed by the server itself (it has to reload properties).
    commands_.push_back(
        {CommandInfo{kInitCommand, TypeTag::DevVoid, TypeTag::DevVoid, "Re-run device initialisation", {}}, {}});
}

DeviceClass& DeviceClass::command(CommandInfo info, CommandHandler handler)
{
    if (info.name.empty())
        throw_dev_failed(reason::MalformedArgument, "command name is empty", "DeviceClass::command");
    for (auto& c : commands_) {
        if (!iequals(c.info.name, info.name))
            continue;
        const bool overridable = iequals(info.name, kStateCommand) || iequals(info.name, kStatusCommand);
        if (!overridable)
            throw_dev_failed(reason::DuplicateName, "command " + info.name + " defined twice in class " + name_,
                             "DeviceClass::command");
        if (info.in_type != c.info.in_type || info.out_type != c.info.out_type)
            throw_dev_failed(reason::MalformedArgument, info.name + " override must keep the builtin signature",
                             "DeviceClass::command");
        c.handler = std::move(handler);
        if (!info.description.empty())
            c.info.description = info.description;
        return *this;
    }
    commands_.push_back({std::move(info), std::move(handler)});
    return *this;
}

DeviceClass& DeviceClass::attribute(AttributeConfig config, AttrReadHandler read, AttrWriteHandler write)
{
    config.validate();
    if (find_attribute(config.name))
        throw_dev_failed(reason::DuplicateName, "attribute " + config.name + " defined twice in class " + name_,
                         "DeviceClass::attribute");
    const bool readable = config.writable != AttrWritable::Write;
    const bool writable = config.writable != AttrWritable::Read;
    if (readable && !read)
        throw_dev_failed(reason::BadAttributeConfig, "readable attribute " + config.name + " has no read handler",
                         "DeviceClass::attribute");
    if (writable && !write)
        throw_dev_failed(reason::BadAttributeConfig, "writable attribute " + config.name + " has no write handler",
                         "DeviceClass::attribute");
    attributes_.push_back({std::move(config), std::move(read), std::move(write)});
    return *this;
}

DeviceClass& DeviceClass::property(PropertySpec spec)
{
    auto dup = std::any_of(properties_.begin(), properties_.end(),
                           [&](const PropertySpec& p) { return iequals(p.name, spec.name); });
    if (dup)
        throw_dev_failed(reason::DuplicateName, "property " + spec.name + " defined twice in class " + name_,
                         "DeviceClass::property");
    properties_.push_back(std::move(spec));
    return *this;
}

const CommandEntry* DeviceClass::find_command(std::string_view name) const
{
    for (const auto& c : commands_)
        if (iequals(c.info.name, name))
            return &c;
    return nullptr;
}

const AttributeEntry* DeviceClass::find_attribute(std::string_view name) const
{
    for (const auto& a : attributes_)
        if (iequals(a.config.name, name))
            return &a;
    return nullptr;
}

std::unique_ptr<Device> DeviceClass::create(const DeviceName& name)
{
    return factory_(*this, name);
}

} // namespace tng::server
