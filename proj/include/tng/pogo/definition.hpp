#pragma once

#include "tng/core/attribute.hpp"
#include "tng/core/command_info.hpp"
#include "tng/server/device_class.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace tng::pogo {

struct StateDoc {
    DeviceState state = DeviceState::ON;
    std::string description;
};

struct PropertyDef {
    std::string name;
    server::PropertyType type = server::PropertyType::String;
    std::vector<std::string> default_values;
    std::string description;
};

// Declarative description of one device class, read from a JSON document.
struct ClassDefinition {
    std::string class_name;
    std::string description;
    std::vector<StateDoc> states;
    std::vector<CommandInfo> commands;
    std::vector<AttributeConfig> attributes;
    std::vector<PropertyDef> device_properties;
    /// File name the definition came from, used in generated headers and diagnostics.
    std::string source_name;
};

/// Throws PARSE_ERROR, UNKNOWN_TYPE, DUPLICATE_NAME or RESERVED_NAME; descriptions
/// start with "<source>:<line>: ".
ClassDefinition parse_definition(std::string_view text, std::string source_name = "<definition>");
ClassDefinition load_definition(const std::filesystem::path& file);

/// Inverse of parse_definition, used by tests to build random definitions.
std::string definition_to_json(const ClassDefinition& def);

std::string_view property_type_name(server::PropertyType t);

/// "EchoLong" -> "echo_long", "long_scalar" -> "long_scalar".
std::string snake_case(std::string_view name);

} // namespace tng::pogo
