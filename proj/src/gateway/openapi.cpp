#include "tng/gateway/gateway.hpp"

namespace tng::gateway {

namespace {

// Values travel as {"type": "<TagName>", "value": ...}; errors as
// {"errors": [{"reason", "description", "origin", "severity"}]}.
constexpr const char* kDocument = R"json({
  "openapi": "3.0.3",
  "info": {"title": "Control system gateway", "version": "1"},
  "components": {
    "schemas": {
      "Value": {"type": "object", "required": ["type"],
                "properties": {"type": {"type": "string"}, "value": {}}},
      "Errors": {"type": "object", "properties": {"errors": {"type": "array", "items": {
        "type": "object", "properties": {"reason": {"type": "string"}, "description": {"type": "string"},
                                          "origin": {"type": "string"}, "severity": {"type": "string"}}}}}},
      "Property": {"type": "object", "properties": {"name": {"type": "string"},
                   "values": {"type": "array", "items": {"type": "string"}}}},
      "FleetView": {"type": "object", "properties": {"hosts": {"type": "array", "items": {
        "type": "object", "properties": {"host": {"type": "string"}, "starter_state": {"type": "string"},
          "servers": {"type": "array", "items": {"type": "object", "properties": {
            "server_id": {"type": "string"}, "level": {"type": "integer"},
            "observed": {"type": "string"}, "devices": {"type": "integer"}}}}}}}}}
    },
    "responses": {
      "Error": {"description": "Failure with the device error stack",
                "content": {"application/json": {"schema": {"$ref": "#/components/schemas/Errors"}}}}
    }
  },
  "paths": {
    "/api/v1/devices": {"get": {"summary": "All device names", "responses": {"200": {"description": "names"}}}},
    "/api/v1/devices/{domain}/{family}/{member}": {
      "get": {"summary": "State and status", "responses": {"200": {"description": "state"},
              "404": {"$ref": "#/components/responses/Error"}, "504": {"$ref": "#/components/responses/Error"}}}},
    "/api/v1/devices/{domain}/{family}/{member}/commands": {
      "get": {"summary": "Command descriptions", "responses": {"200": {"description": "commands"}}}},
    "/api/v1/devices/{domain}/{family}/{member}/commands/{command}": {
      "get": {"summary": "One command description", "responses": {"200": {"description": "command"}}},
      "post": {"summary": "Execute a command",
               "requestBody": {"content": {"application/json": {"schema": {"$ref": "#/components/schemas/Value"}}}},
               "responses": {"200": {"description": "result",
                                     "content": {"application/json": {"schema": {"$ref": "#/components/schemas/Value"}}}},
                             "400": {"$ref": "#/components/responses/Error"},
                             "404": {"$ref": "#/components/responses/Error"},
                             "502": {"$ref": "#/components/responses/Error"},
                             "504": {"$ref": "#/components/responses/Error"}}}},
    "/api/v1/devices/{domain}/{family}/{member}/attributes": {
      "get": {"summary": "Attribute configurations", "responses": {"200": {"description": "configs"}}}},
    "/api/v1/devices/{domain}/{family}/{member}/attributes/{attribute}": {
      "get": {"summary": "Read with dims, timestamp and source", "responses": {"200": {"description": "reading"}}},
      "put": {"summary": "Write; body {\"data\": [...], \"dim_x\", \"dim_y\"} or {\"value\": x}",
              "responses": {"204": {"description": "written"}, "403": {"$ref": "#/components/responses/Error"}}}},
    "/api/v1/db/devices": {"get": {"summary": "Defined devices", "responses": {"200": {"description": "names"}}}},
    "/api/v1/db/devices/{domain}/{family}/{member}": {
      "get": {"summary": "Device record", "responses": {"200": {"description": "record"}}}},
    "/api/v1/db/devices/{domain}/{family}/{member}/properties": {
      "get": {"summary": "All properties", "responses": {"200": {"description": "properties"}}}},
    "/api/v1/db/devices/{domain}/{family}/{member}/properties/{property}": {
      "get": {"summary": "One property", "responses": {"200": {"description": "property",
              "content": {"application/json": {"schema": {"$ref": "#/components/schemas/Property"}}}}}},
      "put": {"summary": "Set; body {\"values\": [strings]}", "responses": {"204": {"description": "stored"}}},
      "delete": {"summary": "Remove (idempotent)", "responses": {"204": {"description": "removed"}}}},
    "/api/v1/db/browse": {"get": {"summary": "Devices matching ?pattern=",
                                  "responses": {"200": {"description": "names"}}}},
    "/api/v1/db/servers": {"get": {"summary": "Registered servers", "responses": {"200": {"description": "ids"}}}},
    "/api/v1/db/servers/{exec}/{instance}": {
      "get": {"summary": "Server record", "responses": {"200": {"description": "record"}}},
      "put": {"summary": "Register; body {host, level, classes: [{class, devices}]}",
              "responses": {"204": {"description": "stored"}}},
      "delete": {"summary": "Unregister", "responses": {"204": {"description": "removed"}}}},
    "/api/v1/db/hosts": {"get": {"summary": "Hosts", "responses": {"200": {"description": "names"}}}},
    "/api/v1/db/classes": {"get": {"summary": "Classes", "responses": {"200": {"description": "names"}}}},
    "/api/v1/servers": {"get": {"summary": "Fleet view", "responses": {"200": {"description": "fleet",
                        "content": {"application/json": {"schema": {"$ref": "#/components/schemas/FleetView"}}}}}}},
    "/api/v1/servers/{exec}/{instance}": {
      "get": {"summary": "One fleet row", "responses": {"200": {"description": "row"},
              "404": {"$ref": "#/components/responses/Error"}}}},
    "/api/v1/servers/{exec}/{instance}/start": {
      "post": {"summary": "Ask the host's Starter to start it", "responses": {"202": {"description": "poll URL"},
               "404": {"$ref": "#/components/responses/Error"}, "502": {"$ref": "#/components/responses/Error"}}}},
    "/api/v1/servers/{exec}/{instance}/stop": {
      "post": {"summary": "Ask the host's Starter to stop it", "responses": {"202": {"description": "poll URL"},
               "404": {"$ref": "#/components/responses/Error"}, "502": {"$ref": "#/components/responses/Error"}}}}
  }
})json";

} // namespace

const char* openapi_document() { return kDocument; }

} // namespace tng::gateway
