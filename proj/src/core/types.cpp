#include "tng/core/types.hpp"

#include "tng/core/errors.hpp"
#include "tng/core/reasons.hpp"

#include <string>

namespace tng {

namespace {

constexpr std::array<std::string_view, kTypeTagCount> kTagNames = {
    "DevVoid",           "DevBoolean",         "DevShort",          "DevLong",
    "DevFloat",          "DevDouble",          "DevUShort",         "DevULong",
    "DevString",         "DevVarBooleanArray", "DevVarShortArray",  "DevVarLongArray",
    "DevVarFloatArray",  "DevVarDoubleArray",  "DevVarUShortArray", "DevVarULongArray",
    "DevVarStringArray", "DevVarLongStringArray", "DevVarDoubleStringArray", "DevState",
};

constexpr std::array<std::string_view, kDeviceStateCount> kStateNames = {
    "ON", "OFF", "CLOSE", "OPEN", "INSERT", "EXTRACT", "MOVING",
    "STANDBY", "FAULT", "INIT", "RUNNING", "ALARM", "DISABLE", "UNKNOWN",
};

} // namespace

std::string_view to_string(TypeTag t)
{
    auto i = static_cast<std::size_t>(t);
    return i < kTagNames.size() ? kTagNames[i] : std::string_view("?");
}

std::optional<TypeTag> type_tag_from_string(std::string_view name)
{
    for (std::size_t i = 0; i < kTagNames.size(); ++i)
        if (kTagNames[i] == name)
            return static_cast<TypeTag>(i);
    return std::nullopt;
}

std::optional<TypeTag> type_tag_from_code(std::uint32_t code)
{
    if (code >= kTypeTagCount)
        return std::nullopt;
    return static_cast<TypeTag>(code);
}

TypeTag scalar_of_sequence(TypeTag t)
{
    if (!is_sequence(t))
        throw_dev_failed(reason::NotASequence, std::string(to_string(t)) + " is not a simple sequence type",
                         "scalar_of_sequence");
    return static_cast<TypeTag>(code_of(t) - 8);
}

TypeTag sequence_of_scalar(TypeTag t)
{
    if (!is_simple_scalar(t))
        throw_dev_failed(reason::NotAScalar, std::string(to_string(t)) + " is not a simple scalar type",
                         "sequence_of_scalar");
    return static_cast<TypeTag>(code_of(t) + 8);
}

std::string_view to_string(DeviceState s)
{
    auto i = static_cast<std::size_t>(s);
    return i < kStateNames.size() ? kStateNames[i] : std::string_view("?");
}

std::optional<DeviceState> device_state_from_string(std::string_view name)
{
    for (std::size_t i = 0; i < kStateNames.size(); ++i)
        if (kStateNames[i] == name)
            return static_cast<DeviceState>(i);
    return std::nullopt;
}

std::string_view to_string(AttrElementType t) { return to_string(static_cast<TypeTag>(t)); }

std::optional<AttrElementType> attr_element_type_from_code(std::uint32_t code)
{
    for (auto t : kAllAttrElementTypes)
        if (static_cast<std::uint32_t>(t) == code)
            return t;
    return std::nullopt;
}

std::optional<AttrElementType> attr_element_type_from_string(std::string_view name)
{
    auto tag = type_tag_from_string(name);
    if (!tag)
        return std::nullopt;
    return attr_element_type_from_code(code_of(*tag));
}

std::string_view to_string(AttrFormat f)
{
    switch (f) {
    case AttrFormat::Scalar: return "Scalar";
    case AttrFormat::Spectrum: return "Spectrum";
    case AttrFormat::Image: return "Image";
    }
    return "?";
}

std::optional<AttrFormat> attr_format_from_string(std::string_view name)
{
    if (name == "Scalar") return AttrFormat::Scalar;
    if (name == "Spectrum") return AttrFormat::Spectrum;
    if (name == "Image") return AttrFormat::Image;
    return std::nullopt;
}

std::string_view to_string(AttrWritable w)
{
    switch (w) {
    case AttrWritable::Read: return "Read";
    case AttrWritable::Write: return "Write";
    case AttrWritable::ReadWrite: return "ReadWrite";
    }
    return "?";
}

std::optional<AttrWritable> attr_writable_from_string(std::string_view name)
{
    if (name == "Read") return AttrWritable::Read;
    if (name == "Write") return AttrWritable::Write;
    if (name == "ReadWrite") return AttrWritable::ReadWrite;
    return std::nullopt;
}

std::string_view to_string(DataSource s) { return s == DataSource::Cache ? "Cache" : "Hardware"; }

std::optional<DataSource> data_source_from_string(std::string_view name)
{
    if (name == "Hardware") return DataSource::Hardware;
    if (name == "Cache") return DataSource::Cache;
    return std::nullopt;
}

} // namespace tng
