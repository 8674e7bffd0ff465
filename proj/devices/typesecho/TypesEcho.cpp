// Generated by pogo from typesecho.json.
// Only text inside protected regions survives regeneration.
#include "TypesEcho.hpp"

using namespace tng;

std::shared_ptr<server::DeviceClass> TypesEcho::make_class()
{
    auto cls = server::DeviceClass::make<TypesEcho>("TypesEcho", "Conformance device: one echo command per data type and one read/write attribute per element type and format.");
    cls->command("EchoBoolean", &TypesEcho::echo_boolean, "Returns its DevBoolean argument unchanged");
    cls->command("EchoShort", &TypesEcho::echo_short, "Returns its DevShort argument unchanged");
    cls->command("EchoLong", &TypesEcho::echo_long, "Returns its DevLong argument unchanged");
    cls->command("EchoFloat", &TypesEcho::echo_float, "Returns its DevFloat argument unchanged");
    cls->command("EchoDouble", &TypesEcho::echo_double, "Returns its DevDouble argument unchanged");
    cls->command("EchoUShort", &TypesEcho::echo_u_short, "Returns its DevUShort argument unchanged");
    cls->command("EchoULong", &TypesEcho::echo_u_long, "Returns its DevULong argument unchanged");
    cls->command("EchoString", &TypesEcho::echo_string, "Returns its DevString argument unchanged");
    cls->command("EchoBooleanArray", &TypesEcho::echo_boolean_array, "Returns its DevVarBooleanArray argument unchanged");
    cls->command("EchoShortArray", &TypesEcho::echo_short_array, "Returns its DevVarShortArray argument unchanged");
    cls->command("EchoLongArray", &TypesEcho::echo_long_array, "Returns its DevVarLongArray argument unchanged");
    cls->command("EchoFloatArray", &TypesEcho::echo_float_array, "Returns its DevVarFloatArray argument unchanged");
    cls->command("EchoDoubleArray", &TypesEcho::echo_double_array, "Returns its DevVarDoubleArray argument unchanged");
    cls->command("EchoUShortArray", &TypesEcho::echo_u_short_array, "Returns its DevVarUShortArray argument unchanged");
    cls->command("EchoULongArray", &TypesEcho::echo_u_long_array, "Returns its DevVarULongArray argument unchanged");
    cls->command("EchoStringArray", &TypesEcho::echo_string_array, "Returns its DevVarStringArray argument unchanged");
    cls->command("EchoLongStringArray", &TypesEcho::echo_long_string_array, "Returns its DevVarLongStringArray argument unchanged");
    cls->command("EchoDoubleStringArray", &TypesEcho::echo_double_string_array, "Returns its DevVarDoubleStringArray argument unchanged");
    cls->command("EchoState", &TypesEcho::echo_state, "Returns its DevState argument unchanged");
    cls->attribute<TypesEcho>({.name = "short_scalar", .writable = AttrWritable::ReadWrite, .element_type = AttrElementType::DevShort, .format = AttrFormat::Scalar, .max_dim_x = 1, .max_dim_y = 0, .description = "Last written short scalar", .unit = ""},
                        &TypesEcho::read_short_scalar, &TypesEcho::write_short_scalar);
    cls->attribute<TypesEcho>({.name = "short_spectrum", .writable = AttrWritable::ReadWrite, .element_type = AttrElementType::DevShort, .format = AttrFormat::Spectrum, .max_dim_x = 256, .max_dim_y = 0, .description = "Last written short spectrum", .unit = ""},
                        &TypesEcho::read_short_spectrum, &TypesEcho::write_short_spectrum);
    cls->attribute<TypesEcho>({.name = "short_image", .writable = AttrWritable::ReadWrite, .element_type = AttrElementType::DevShort, .format = AttrFormat::Image, .max_dim_x = 64, .max_dim_y = 64, .description = "Last written short image", .unit = ""},
                        &TypesEcho::read_short_image, &TypesEcho::write_short_image);
    cls->attribute<TypesEcho>({.name = "long_scalar", .writable = AttrWritable::ReadWrite, .element_type = AttrElementType::DevLong, .format = AttrFormat::Scalar, .max_dim_x = 1, .max_dim_y = 0, .description = "Last written long scalar", .unit = ""},
                        &TypesEcho::read_long_scalar, &TypesEcho::write_long_scalar);
    cls->attribute<TypesEcho>({.name = "long_spectrum", .writable = AttrWritable::ReadWrite, .element_type = AttrElementType::DevLong, .format = AttrFormat::Spectrum, .max_dim_x = 256, .max_dim_y = 0, .description = "Last written long spectrum", .unit = ""},
                        &TypesEcho::read_long_spectrum, &TypesEcho::write_long_spectrum);
    cls->attribute<TypesEcho>({.name = "long_image", .writable = AttrWritable::ReadWrite, .element_type = AttrElementType::DevLong, .format = AttrFormat::Image, .max_dim_x = 64, .max_dim_y = 64, .description = "Last written long image", .unit = ""},
                        &TypesEcho::read_long_image, &TypesEcho::write_long_image);
    cls->attribute<TypesEcho>({.name = "double_scalar", .writable = AttrWritable::ReadWrite, .element_type = AttrElementType::DevDouble, .format = AttrFormat::Scalar, .max_dim_x = 1, .max_dim_y = 0, .description = "Last written double scalar", .unit = ""},
                        &TypesEcho::read_double_scalar, &TypesEcho::write_double_scalar);
    cls->attribute<TypesEcho>({.name = "double_spectrum", .writable = AttrWritable::ReadWrite, .element_type = AttrElementType::DevDouble, .format = AttrFormat::Spectrum, .max_dim_x = 256, .max_dim_y = 0, .description = "Last written double spectrum", .unit = ""},
                        &TypesEcho::read_double_spectrum, &TypesEcho::write_double_spectrum);
    cls->attribute<TypesEcho>({.name = "double_image", .writable = AttrWritable::ReadWrite, .element_type = AttrElementType::DevDouble, .format = AttrFormat::Image, .max_dim_x = 64, .max_dim_y = 64, .description = "Last written double image", .unit = ""},
                        &TypesEcho::read_double_image, &TypesEcho::write_double_image);
    cls->attribute<TypesEcho>({.name = "string_scalar", .writable = AttrWritable::ReadWrite, .element_type = AttrElementType::DevString, .format = AttrFormat::Scalar, .max_dim_x = 1, .max_dim_y = 0, .description = "Last written string scalar", .unit = ""},
                        &TypesEcho::read_string_scalar, &TypesEcho::write_string_scalar);
    cls->attribute<TypesEcho>({.name = "string_spectrum", .writable = AttrWritable::ReadWrite, .element_type = AttrElementType::DevString, .format = AttrFormat::Spectrum, .max_dim_x = 256, .max_dim_y = 0, .description = "Last written string spectrum", .unit = ""},
                        &TypesEcho::read_string_spectrum, &TypesEcho::write_string_spectrum);
    cls->attribute<TypesEcho>({.name = "string_image", .writable = AttrWritable::ReadWrite, .element_type = AttrElementType::DevString, .format = AttrFormat::Image, .max_dim_x = 64, .max_dim_y = 64, .description = "Last written string image", .unit = ""},
                        &TypesEcho::read_string_image, &TypesEcho::write_string_image);
    return cls;
}

void TypesEcho::init_device()
{
    // PROTECTED-REGION BEGIN TypesEcho.init
    set_status("Echoing every data type");
    // PROTECTED-REGION END TypesEcho.init
}

void TypesEcho::delete_device()
{
    // PROTECTED-REGION BEGIN TypesEcho.delete
    stored_.clear();
    // PROTECTED-REGION END TypesEcho.delete
}

// Returns its DevBoolean argument unchanged
bool TypesEcho::echo_boolean(const bool& argin)
{
    bool argout{};
    // PROTECTED-REGION BEGIN cmd.EchoBoolean.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoBoolean.body
    return argout;
}

// Returns its DevShort argument unchanged
std::int16_t TypesEcho::echo_short(const std::int16_t& argin)
{
    std::int16_t argout{};
    // PROTECTED-REGION BEGIN cmd.EchoShort.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoShort.body
    return argout;
}

// Returns its DevLong argument unchanged
std::int32_t TypesEcho::echo_long(const std::int32_t& argin)
{
    std::int32_t argout{};
    // PROTECTED-REGION BEGIN cmd.EchoLong.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoLong.body
    return argout;
}

// Returns its DevFloat argument unchanged
float TypesEcho::echo_float(const float& argin)
{
    float argout{};
    // PROTECTED-REGION BEGIN cmd.EchoFloat.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoFloat.body
    return argout;
}

// Returns its DevDouble argument unchanged
double TypesEcho::echo_double(const double& argin)
{
    double argout{};
    // PROTECTED-REGION BEGIN cmd.EchoDouble.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoDouble.body
    return argout;
}

// Returns its DevUShort argument unchanged
std::uint16_t TypesEcho::echo_u_short(const std::uint16_t& argin)
{
    std::uint16_t argout{};
    // PROTECTED-REGION BEGIN cmd.EchoUShort.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoUShort.body
    return argout;
}

// Returns its DevULong argument unchanged
std::uint32_t TypesEcho::echo_u_long(const std::uint32_t& argin)
{
    std::uint32_t argout{};
    // PROTECTED-REGION BEGIN cmd.EchoULong.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoULong.body
    return argout;
}

// Returns its DevString argument unchanged
std::string TypesEcho::echo_string(const std::string& argin)
{
    std::string argout{};
    // PROTECTED-REGION BEGIN cmd.EchoString.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoString.body
    return argout;
}

// Returns its DevVarBooleanArray argument unchanged
std::vector<bool> TypesEcho::echo_boolean_array(const std::vector<bool>& argin)
{
    std::vector<bool> argout{};
    // PROTECTED-REGION BEGIN cmd.EchoBooleanArray.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoBooleanArray.body
    return argout;
}

// Returns its DevVarShortArray argument unchanged
std::vector<std::int16_t> TypesEcho::echo_short_array(const std::vector<std::int16_t>& argin)
{
    std::vector<std::int16_t> argout{};
    // PROTECTED-REGION BEGIN cmd.EchoShortArray.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoShortArray.body
    return argout;
}

// Returns its DevVarLongArray argument unchanged
std::vector<std::int32_t> TypesEcho::echo_long_array(const std::vector<std::int32_t>& argin)
{
    std::vector<std::int32_t> argout{};
    // PROTECTED-REGION BEGIN cmd.EchoLongArray.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoLongArray.body
    return argout;
}

// Returns its DevVarFloatArray argument unchanged
std::vector<float> TypesEcho::echo_float_array(const std::vector<float>& argin)
{
    std::vector<float> argout{};
    // PROTECTED-REGION BEGIN cmd.EchoFloatArray.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoFloatArray.body
    return argout;
}

// Returns its DevVarDoubleArray argument unchanged
std::vector<double> TypesEcho::echo_double_array(const std::vector<double>& argin)
{
    std::vector<double> argout{};
    // PROTECTED-REGION BEGIN cmd.EchoDoubleArray.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoDoubleArray.body
    return argout;
}

// Returns its DevVarUShortArray argument unchanged
std::vector<std::uint16_t> TypesEcho::echo_u_short_array(const std::vector<std::uint16_t>& argin)
{
    std::vector<std::uint16_t> argout{};
    // PROTECTED-REGION BEGIN cmd.EchoUShortArray.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoUShortArray.body
    return argout;
}

// Returns its DevVarULongArray argument unchanged
std::vector<std::uint32_t> TypesEcho::echo_u_long_array(const std::vector<std::uint32_t>& argin)
{
    std::vector<std::uint32_t> argout{};
    // PROTECTED-REGION BEGIN cmd.EchoULongArray.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoULongArray.body
    return argout;
}

// Returns its DevVarStringArray argument unchanged
std::vector<std::string> TypesEcho::echo_string_array(const std::vector<std::string>& argin)
{
    std::vector<std::string> argout{};
    // PROTECTED-REGION BEGIN cmd.EchoStringArray.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoStringArray.body
    return argout;
}

// Returns its DevVarLongStringArray argument unchanged
tng::LongStringArray TypesEcho::echo_long_string_array(const tng::LongStringArray& argin)
{
    tng::LongStringArray argout{};
    // PROTECTED-REGION BEGIN cmd.EchoLongStringArray.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoLongStringArray.body
    return argout;
}

// Returns its DevVarDoubleStringArray argument unchanged
tng::DoubleStringArray TypesEcho::echo_double_string_array(const tng::DoubleStringArray& argin)
{
    tng::DoubleStringArray argout{};
    // PROTECTED-REGION BEGIN cmd.EchoDoubleStringArray.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoDoubleStringArray.body
    return argout;
}

// Returns its DevState argument unchanged
tng::DeviceState TypesEcho::echo_state(const tng::DeviceState& argin)
{
    tng::DeviceState argout{};
    // PROTECTED-REGION BEGIN cmd.EchoState.body
    argout = argin;
    // PROTECTED-REGION END cmd.EchoState.body
    return argout;
}

AttributeValue TypesEcho::read_short_scalar()
{
    AttributeValue reading = tng::AttributeValue::scalar<std::int16_t>("short_scalar", {});
    // PROTECTED-REGION BEGIN attr.short_scalar.read
    if (auto it = stored_.find("short_scalar"); it != stored_.end())
        reading = it->second;
    // PROTECTED-REGION END attr.short_scalar.read
    return reading;
}

void TypesEcho::write_short_scalar(const AttributeValue& w)
{
    // PROTECTED-REGION BEGIN attr.short_scalar.write
    stored_.insert_or_assign("short_scalar", w);
    // PROTECTED-REGION END attr.short_scalar.write
}

AttributeValue TypesEcho::read_short_spectrum()
{
    AttributeValue reading = tng::AttributeValue::spectrum<std::int16_t>("short_spectrum", {});
    // PROTECTED-REGION BEGIN attr.short_spectrum.read
    if (auto it = stored_.find("short_spectrum"); it != stored_.end())
        reading = it->second;
    // PROTECTED-REGION END attr.short_spectrum.read
    return reading;
}

void TypesEcho::write_short_spectrum(const AttributeValue& w)
{
    // PROTECTED-REGION BEGIN attr.short_spectrum.write
    stored_.insert_or_assign("short_spectrum", w);
    // PROTECTED-REGION END attr.short_spectrum.write
}

AttributeValue TypesEcho::read_short_image()
{
    AttributeValue reading = tng::AttributeValue::image<std::int16_t>("short_image", {}, 0, 0);
    // PROTECTED-REGION BEGIN attr.short_image.read
    if (auto it = stored_.find("short_image"); it != stored_.end())
        reading = it->second;
    // PROTECTED-REGION END attr.short_image.read
    return reading;
}

void TypesEcho::write_short_image(const AttributeValue& w)
{
    // PROTECTED-REGION BEGIN attr.short_image.write
    stored_.insert_or_assign("short_image", w);
    // PROTECTED-REGION END attr.short_image.write
}

AttributeValue TypesEcho::read_long_scalar()
{
    AttributeValue reading = tng::AttributeValue::scalar<std::int32_t>("long_scalar", {});
    // PROTECTED-REGION BEGIN attr.long_scalar.read
    if (auto it = stored_.find("long_scalar"); it != stored_.end())
        reading = it->second;
    // PROTECTED-REGION END attr.long_scalar.read
    return reading;
}

void TypesEcho::write_long_scalar(const AttributeValue& w)
{
    // PROTECTED-REGION BEGIN attr.long_scalar.write
    stored_.insert_or_assign("long_scalar", w);
    // PROTECTED-REGION END attr.long_scalar.write
}

AttributeValue TypesEcho::read_long_spectrum()
{
    AttributeValue reading = tng::AttributeValue::spectrum<std::int32_t>("long_spectrum", {});
    // PROTECTED-REGION BEGIN attr.long_spectrum.read
    if (auto it = stored_.find("long_spectrum"); it != stored_.end())
        reading = it->second;
    // PROTECTED-REGION END attr.long_spectrum.read
    return reading;
}

void TypesEcho::write_long_spectrum(const AttributeValue& w)
{
    // PROTECTED-REGION BEGIN attr.long_spectrum.write
    stored_.insert_or_assign("long_spectrum", w);
    // PROTECTED-REGION END attr.long_spectrum.write
}

AttributeValue TypesEcho::read_long_image()
{
    AttributeValue reading = tng::AttributeValue::image<std::int32_t>("long_image", {}, 0, 0);
    // PROTECTED-REGION BEGIN attr.long_image.read
    if (auto it = stored_.find("long_image"); it != stored_.end())
        reading = it->second;
    // PROTECTED-REGION END attr.long_image.read
    return reading;
}

void TypesEcho::write_long_image(const AttributeValue& w)
{
    // PROTECTED-REGION BEGIN attr.long_image.write
    stored_.insert_or_assign("long_image", w);
    // PROTECTED-REGION END attr.long_image.write
}

AttributeValue TypesEcho::read_double_scalar()
{
    AttributeValue reading = tng::AttributeValue::scalar<double>("double_scalar", {});
    // PROTECTED-REGION BEGIN attr.double_scalar.read
    if (auto it = stored_.find("double_scalar"); it != stored_.end())
        reading = it->second;
    // PROTECTED-REGION END attr.double_scalar.read
    return reading;
}

void TypesEcho::write_double_scalar(const AttributeValue& w)
{
    // PROTECTED-REGION BEGIN attr.double_scalar.write
    stored_.insert_or_assign("double_scalar", w);
    // PROTECTED-REGION END attr.double_scalar.write
}

AttributeValue TypesEcho::read_double_spectrum()
{
    AttributeValue reading = tng::AttributeValue::spectrum<double>("double_spectrum", {});
    // PROTECTED-REGION BEGIN attr.double_spectrum.read
    if (auto it = stored_.find("double_spectrum"); it != stored_.end())
        reading = it->second;
    // PROTECTED-REGION END attr.double_spectrum.read
    return reading;
}

void TypesEcho::write_double_spectrum(const AttributeValue& w)
{
    // PROTECTED-REGION BEGIN attr.double_spectrum.write
    stored_.insert_or_assign("double_spectrum", w);
    // PROTECTED-REGION END attr.double_spectrum.write
}

AttributeValue TypesEcho::read_double_image()
{
    AttributeValue reading = tng::AttributeValue::image<double>("double_image", {}, 0, 0);
    // PROTECTED-REGION BEGIN attr.double_image.read
    if (auto it = stored_.find("double_image"); it != stored_.end())
        reading = it->second;
    // PROTECTED-REGION END attr.double_image.read
    return reading;
}

void TypesEcho::write_double_image(const AttributeValue& w)
{
    // PROTECTED-REGION BEGIN attr.double_image.write
    stored_.insert_or_assign("double_image", w);
    // PROTECTED-REGION END attr.double_image.write
}

AttributeValue TypesEcho::read_string_scalar()
{
    AttributeValue reading = tng::AttributeValue::scalar<std::string>("string_scalar", {});
    // PROTECTED-REGION BEGIN attr.string_scalar.read
    if (auto it = stored_.find("string_scalar"); it != stored_.end())
        reading = it->second;
    // PROTECTED-REGION END attr.string_scalar.read
    return reading;
}

void TypesEcho::write_string_scalar(const AttributeValue& w)
{
    // PROTECTED-REGION BEGIN attr.string_scalar.write
    stored_.insert_or_assign("string_scalar", w);
    // PROTECTED-REGION END attr.string_scalar.write
}

AttributeValue TypesEcho::read_string_spectrum()
{
    AttributeValue reading = tng::AttributeValue::spectrum<std::string>("string_spectrum", {});
    // PROTECTED-REGION BEGIN attr.string_spectrum.read
    if (auto it = stored_.find("string_spectrum"); it != stored_.end())
        reading = it->second;
    // PROTECTED-REGION END attr.string_spectrum.read
    return reading;
}

void TypesEcho::write_string_spectrum(const AttributeValue& w)
{
    // PROTECTED-REGION BEGIN attr.string_spectrum.write
    stored_.insert_or_assign("string_spectrum", w);
    // PROTECTED-REGION END attr.string_spectrum.write
}

AttributeValue TypesEcho::read_string_image()
{
    AttributeValue reading = tng::AttributeValue::image<std::string>("string_image", {}, 0, 0);
    // PROTECTED-REGION BEGIN attr.string_image.read
    if (auto it = stored_.find("string_image"); it != stored_.end())
        reading = it->second;
    // PROTECTED-REGION END attr.string_image.read
    return reading;
}

void TypesEcho::write_string_image(const AttributeValue& w)
{
    // PROTECTED-REGION BEGIN attr.string_image.write
    stored_.insert_or_assign("string_image", w);
    // PROTECTED-REGION END attr.string_image.write
}

// PROTECTED-REGION BEGIN TypesEcho.extra
// PROTECTED-REGION END TypesEcho.extra
