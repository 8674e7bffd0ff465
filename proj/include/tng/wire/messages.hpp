#pragma once

#include "tng/core/attribute.hpp"
#include "tng/core/command_info.hpp"
#include "tng/core/errors.hpp"
#include "tng/wire/codec.hpp"

#include <optional>
#include <variant>

namespace tng::wire {

// One operation set for every device. Codes are frozen.
enum class OpCode : std::uint8_t {
    CommandInout = 1,
    ReadAttributes = 2,
    WriteAttributes = 3,
    CommandListQuery = 4,
    CommandQuery = 5,
    GetAttributeConfig = 6,
    SetAttributeConfig = 7,
    Ping = 8,
    State = 9,
    Status = 10,
};

std::optional<OpCode> op_code_from_byte(std::uint8_t b) noexcept;
std::string_view to_string(OpCode op);

enum class ReplyStatus : std::uint8_t { Ok = 0, Error = 1 };

struct RequestEnvelope {
    std::uint32_t request_id = 0;
    std::uint8_t op_code = 0;
    std::string device;
    Bytes payload;
};

struct ReplyEnvelope {
    std::uint32_t request_id = 0;
    ReplyStatus status = ReplyStatus::Ok;
    Bytes payload;
};

Bytes encode_request(const RequestEnvelope& r);
RequestEnvelope decode_request(std::span<const std::uint8_t> body);
Bytes encode_reply(const ReplyEnvelope& r);
ReplyEnvelope decode_reply(std::span<const std::uint8_t> body);

// Structured payload pieces.
void encode_errors(Writer& w, const DevErrorList& errors);
DevErrorList decode_errors(Reader& r);
Bytes encode_errors(const DevErrorList& errors);

void encode_attribute_value(Writer& w, const AttributeValue& v);
AttributeValue decode_attribute_value(Reader& r);

void encode_attribute_config(Writer& w, const AttributeConfig& c);
AttributeConfig decode_attribute_config(Reader& r);

void encode_command_info(Writer& w, const CommandInfo& c);
CommandInfo decode_command_info(Reader& r);

void encode_strings(Writer& w, const std::vector<std::string>& v);
std::vector<std::string> decode_strings(Reader& r);

// Per-attribute result of ReadAttributes: a value or that attribute's error stack.
using AttrReadResult = std::variant<AttributeValue, DevErrorList>;

void encode_read_results(Writer& w, const std::vector<AttrReadResult>& results);
std::vector<AttrReadResult> decode_read_results(Reader& r);

// CommandInout request: command name + value. Reply: value + 1 source byte.
struct CommandRequest {
    std::string command;
    TangoValue argument;
};
struct CommandReply {
    TangoValue value;
    DataSource source = DataSource::Hardware;
};

Bytes encode_command_request(const CommandRequest& c);
CommandRequest decode_command_request(std::span<const std::uint8_t> payload);
Bytes encode_command_reply(const CommandReply& c);
CommandReply decode_command_reply(std::span<const std::uint8_t> payload);

} // namespace tng::wire
