#pragma once

#include "tng/core/attribute.hpp"
#include "tng/core/command_info.hpp"
#include "tng/core/errors.hpp"
#include "tng/core/value.hpp"

#include <json.hpp>

namespace tng::jsonmap {

using nlohmann::json;

// Canonical JSON forms shared by the gateway, devcli and astor --json.
// Decoders throw BAD_JSON.
json to_json(const TangoValue& v);
TangoValue value_from_json(const json& j);
/// Decodes a value that must have the given tag; a bare JSON value is accepted and typed by `tag`.
TangoValue value_from_json(const json& j, TypeTag tag);

json to_json(const AttributeValue& v);
AttributeValue attribute_value_from_json(const json& j, const AttributeConfig& cfg);

json to_json(const AttributeConfig& c);
json to_json(const CommandInfo& c);
json to_json(const DevErrorList& errors);

} // namespace tng::jsonmap
