#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace tng {

// Command payload type tags. Codes are part of the wire format.
enum class TypeTag : std::uint8_t {
    DevVoid = 0,
    DevBoolean = 1,
    DevShort = 2,
    DevLong = 3,
    DevFloat = 4,
    DevDouble = 5,
    DevUShort = 6,
    DevULong = 7,
    DevString = 8,
    DevVarBooleanArray = 9,
    DevVarShortArray = 10,
    DevVarLongArray = 11,
    DevVarFloatArray = 12,
    DevVarDoubleArray = 13,
    DevVarUShortArray = 14,
    DevVarULongArray = 15,
    DevVarStringArray = 16,
    DevVarLongStringArray = 17,
    DevVarDoubleStringArray = 18,
    DevState = 19,
};

inline constexpr std::size_t kTypeTagCount = 20;

inline constexpr std::array<TypeTag, kTypeTagCount> kAllTypeTags = {
    TypeTag::DevVoid,           TypeTag::DevBoolean,          TypeTag::DevShort,
    TypeTag::DevLong,           TypeTag::DevFloat,            TypeTag::DevDouble,
    TypeTag::DevUShort,         TypeTag::DevULong,            TypeTag::DevString,
    TypeTag::DevVarBooleanArray, TypeTag::DevVarShortArray,   TypeTag::DevVarLongArray,
    TypeTag::DevVarFloatArray,  TypeTag::DevVarDoubleArray,   TypeTag::DevVarUShortArray,
    TypeTag::DevVarULongArray,  TypeTag::DevVarStringArray,   TypeTag::DevVarLongStringArray,
    TypeTag::DevVarDoubleStringArray, TypeTag::DevState,
};

static_assert(static_cast<std::size_t>(kAllTypeTags.back()) + 1 == kTypeTagCount);

constexpr std::uint8_t code_of(TypeTag t) { return static_cast<std::uint8_t>(t); }

std::string_view to_string(TypeTag t);
std::optional<TypeTag> type_tag_from_string(std::string_view name);
std::optional<TypeTag> type_tag_from_code(std::uint32_t code);

constexpr bool is_sequence(TypeTag t)
{
    return code_of(t) >= code_of(TypeTag::DevVarBooleanArray) && code_of(t) <= code_of(TypeTag::DevVarStringArray);
}

constexpr bool is_simple_scalar(TypeTag t)
{
    return code_of(t) >= code_of(TypeTag::DevBoolean) && code_of(t) <= code_of(TypeTag::DevString);
}

/// Scalar counterpart of a sequence tag (tag - 8). Throws NOT_A_SEQUENCE otherwise.
TypeTag scalar_of_sequence(TypeTag t);
/// Sequence counterpart of a simple scalar tag (tag + 8). Throws NOT_A_SCALAR otherwise.
TypeTag sequence_of_scalar(TypeTag t);

enum class DeviceState : std::uint8_t {
    ON = 0,
    OFF = 1,
    CLOSE = 2,
    OPEN = 3,
    INSERT = 4,
    EXTRACT = 5,
    MOVING = 6,
    STANDBY = 7,
    FAULT = 8,
    INIT = 9,
    RUNNING = 10,
    ALARM = 11,
    DISABLE = 12,
    UNKNOWN = 13,
};

inline constexpr std::size_t kDeviceStateCount = 14;
static_assert(static_cast<std::size_t>(DeviceState::UNKNOWN) + 1 == kDeviceStateCount);

std::string_view to_string(DeviceState s);
std::optional<DeviceState> device_state_from_string(std::string_view name);

// Attribute element types reuse the command tag codes of their scalar type.
enum class AttrElementType : std::uint8_t {
    DevShort = 2,
    DevLong = 3,
    DevDouble = 5,
    DevString = 8,
};

inline constexpr std::array<AttrElementType, 4> kAllAttrElementTypes = {
    AttrElementType::DevShort, AttrElementType::DevLong, AttrElementType::DevDouble, AttrElementType::DevString};

std::string_view to_string(AttrElementType t);
std::optional<AttrElementType> attr_element_type_from_string(std::string_view name);
std::optional<AttrElementType> attr_element_type_from_code(std::uint32_t code);

enum class AttrFormat : std::uint8_t { Scalar = 0, Spectrum = 1, Image = 2 };
inline constexpr std::size_t kAttrFormatCount = 3;

std::string_view to_string(AttrFormat f);
std::optional<AttrFormat> attr_format_from_string(std::string_view name);

enum class AttrWritable : std::uint8_t { Read = 0, Write = 1, ReadWrite = 2 };

std::string_view to_string(AttrWritable w);
std::optional<AttrWritable> attr_writable_from_string(std::string_view name);

enum class DataSource : std::uint8_t { Hardware = 0, Cache = 1 };

std::string_view to_string(DataSource s);
std::optional<DataSource> data_source_from_string(std::string_view name);

} // namespace tng
