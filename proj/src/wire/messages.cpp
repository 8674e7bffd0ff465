#include "tng/wire/messages.hpp"

#include "tng/core/reasons.hpp"

namespace tng::wire {

namespace {

constexpr const char* kOrigin = "wire::messages";

[[noreturn]] void bad_value(std::string what) { throw_dev_failed(reason::BadValue, std::move(what), kOrigin); }

template <class T>
void put_elems(Writer& w, const std::vector<T>& v)
{
    w.count(v.size());
    for (const auto& e : v) {
        if constexpr (std::is_same_v<T, std::int16_t>)
            w.i16(e);
        else if constexpr (std::is_same_v<T, std::int32_t>)
            w.i32(e);
        else if constexpr (std::is_same_v<T, double>)
            w.f64(e);
        else
            w.str(e);
    }
}

template <class T>
std::vector<T> get_elems(Reader& r)
{
    constexpr std::size_t width = std::is_same_v<T, std::string> ? 4 : sizeof(T);
    const auto n = r.count(width);
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if constexpr (std::is_same_v<T, std::int16_t>)
            out.push_back(r.i16());
        else if constexpr (std::is_same_v<T, std::int32_t>)
            out.push_back(r.i32());
        else if constexpr (std::is_same_v<T, double>)
            out.push_back(r.f64());
        else
            out.push_back(r.str());
    }
    return out;
}

} // namespace

std::optional<OpCode> op_code_from_byte(std::uint8_t b) noexcept
{
    if (b >= 1 && b <= 10)
        return static_cast<OpCode>(b);
    return std::nullopt;
}

std::string_view to_string(OpCode op)
{
    switch (op) {
    case OpCode::CommandInout: return "CommandInout";
    case OpCode::ReadAttributes: return "ReadAttributes";
    case OpCode::WriteAttributes: return "WriteAttributes";
    case OpCode::CommandListQuery: return "CommandListQuery";
    case OpCode::CommandQuery: return "CommandQuery";
    case OpCode::GetAttributeConfig: return "GetAttributeConfig";
    case OpCode::SetAttributeConfig: return "SetAttributeConfig";
    case OpCode::Ping: return "Ping";
    case OpCode::State: return "State";
    case OpCode::Status: return "Status";
    }
    return "?";
}

Bytes encode_request(const RequestEnvelope& r)
{
    Bytes out;
    Writer w(out);
    w.u32(r.request_id);
    w.u8(r.op_code);
    w.str(r.device);
    w.raw(r.payload);
    return out;
}

RequestEnvelope decode_request(std::span<const std::uint8_t> body)
{
    Reader rd(body);
    RequestEnvelope r;
    r.request_id = rd.u32();
    r.op_code = rd.u8();
    r.device = rd.str();
    auto rest = rd.rest();
    r.payload.assign(rest.begin(), rest.end());
    return r;
}

Bytes encode_reply(const ReplyEnvelope& r)
{
    Bytes out;
    Writer w(out);
    w.u32(r.request_id);
    w.u8(static_cast<std::uint8_t>(r.status));
    w.raw(r.payload);
    return out;
}

ReplyEnvelope decode_reply(std::span<const std::uint8_t> body)
{
    Reader rd(body);
    ReplyEnvelope r;
    r.request_id = rd.u32();
    auto status = rd.u8();
    if (status > 1)
        bad_value("reply status " + std::to_string(status));
    r.status = static_cast<ReplyStatus>(status);
    auto rest = rd.rest();
    r.payload.assign(rest.begin(), rest.end());
    return r;
}

void encode_errors(Writer& w, const DevErrorList& errors)
{
    w.count(errors.size());
    for (const auto& e : errors) {
        w.str(e.reason);
        w.str(e.description);
        w.str(e.origin);
        w.u8(static_cast<std::uint8_t>(e.severity));
    }
}

Bytes encode_errors(const DevErrorList& errors)
{
    Bytes out;
    Writer w(out);
    encode_errors(w, errors);
    return out;
}

DevErrorList decode_errors(Reader& r)
{
    const auto n = r.count(13);
    if (n == 0)
        bad_value("empty error stack");
    DevErrorList out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        DevError e;
        e.reason = r.str();
        e.description = r.str();
        e.origin = r.str();
        auto sev = r.u8();
        if (sev > 2)
            bad_value("severity " + std::to_string(sev));
        e.severity = static_cast<ErrSeverity>(sev);
        out.push_back(std::move(e));
    }
    return out;
}

void encode_attribute_value(Writer& w, const AttributeValue& v)
{
    w.str(v.name());
    w.u8(static_cast<std::uint8_t>(v.element_type()));
    w.u32(v.dim_x());
    w.u32(v.dim_y());
    w.i64(v.timestamp_ms());
    w.u8(static_cast<std::uint8_t>(v.source()));
    std::visit([&](const auto& d) { put_elems(w, d); }, v.data());
}

AttributeValue decode_attribute_value(Reader& r)
{
    auto name = r.str();
    auto type_code = r.u8();
    auto type = attr_element_type_from_code(type_code);
    if (!type)
        bad_value("attribute element type " + std::to_string(type_code));
    auto dim_x = r.u32();
    auto dim_y = r.u32();
    auto ts = r.i64();
    auto src = r.u8();
    if (src > 1)
        bad_value("data source " + std::to_string(src));
    AttrData data;
    switch (*type) {
    case AttrElementType::DevShort: data = get_elems<std::int16_t>(r); break;
    case AttrElementType::DevLong: data = get_elems<std::int32_t>(r); break;
    case AttrElementType::DevDouble: data = get_elems<double>(r); break;
    case AttrElementType::DevString: data = get_elems<std::string>(r); break;
    }
    const std::uint64_t expected = static_cast<std::uint64_t>(dim_x) * std::max<std::uint64_t>(dim_y, 1);
    if (element_count(data) != expected)
        bad_value("attribute '" + name + "' element count does not match its dims");
    return AttributeValue(std::move(name), std::move(data), dim_x, dim_y, ts, static_cast<DataSource>(src));
}

void encode_attribute_config(Writer& w, const AttributeConfig& c)
{
    w.str(c.name);
    w.u8(static_cast<std::uint8_t>(c.writable));
    w.u8(static_cast<std::uint8_t>(c.element_type));
    w.u8(static_cast<std::uint8_t>(c.format));
    w.u32(c.max_dim_x);
    w.u32(c.max_dim_y);
    w.str(c.description);
    w.str(c.unit);
}

AttributeConfig decode_attribute_config(Reader& r)
{
    AttributeConfig c;
    c.name = r.str();
    auto wr = r.u8();
    if (wr > 2)
        bad_value("writable code " + std::to_string(wr));
    c.writable = static_cast<AttrWritable>(wr);
    auto et = attr_element_type_from_code(r.u8());
    if (!et)
        bad_value("attribute element type");
    c.element_type = *et;
    auto fmt = r.u8();
    if (fmt >= kAttrFormatCount)
        bad_value("format code " + std::to_string(fmt));
    c.format = static_cast<AttrFormat>(fmt);
    c.max_dim_x = r.u32();
    c.max_dim_y = r.u32();
    c.description = r.str();
    c.unit = r.str();
    return c;
}

void encode_command_info(Writer& w, const CommandInfo& c)
{
    w.str(c.name);
    w.u8(code_of(c.in_type));
    w.u8(code_of(c.out_type));
    w.str(c.description);
    w.count(c.allowed_states.size());
    for (auto s : c.allowed_states)
        w.u8(static_cast<std::uint8_t>(s));
}

CommandInfo decode_command_info(Reader& r)
{
    CommandInfo c;
    c.name = r.str();
    auto in = type_tag_from_code(r.u8());
    auto out = type_tag_from_code(r.u8());
    if (!in || !out)
        throw_dev_failed(reason::BadTag, "command type tag out of range", kOrigin);
    c.in_type = *in;
    c.out_type = *out;
    c.description = r.str();
    const auto n = r.count(1);
    for (std::size_t i = 0; i < n; ++i) {
        auto s = r.u8();
        if (s >= kDeviceStateCount)
            bad_value("device state code " + std::to_string(s));
        c.allowed_states.push_back(static_cast<DeviceState>(s));
    }
    return c;
}

void encode_strings(Writer& w, const std::vector<std::string>& v)
{
    w.count(v.size());
    for (const auto& s : v)
        w.str(s);
}

std::vector<std::string> decode_strings(Reader& r)
{
    const auto n = r.count(4);
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(r.str());
    return out;
}

void encode_read_results(Writer& w, const std::vector<AttrReadResult>& results)
{
    w.count(results.size());
    for (const auto& res : results) {
        if (const auto* v = std::get_if<AttributeValue>(&res)) {
            w.u8(0);
            encode_attribute_value(w, *v);
        } else {
            w.u8(1);
            encode_errors(w, std::get<DevErrorList>(res));
        }
    }
}

std::vector<AttrReadResult> decode_read_results(Reader& r)
{
    const auto n = r.count(1);
    std::vector<AttrReadResult> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto kind = r.u8();
        if (kind == 0)
            out.emplace_back(decode_attribute_value(r));
        else if (kind == 1)
            out.emplace_back(decode_errors(r));
        else
            bad_value("read result kind " + std::to_string(kind));
    }
    return out;
}

Bytes encode_command_request(const CommandRequest& c)
{
    Bytes out;
    Writer w(out);
    w.str(c.command);
    encode_value(w, c.argument);
    return out;
}

CommandRequest decode_command_request(std::span<const std::uint8_t> payload)
{
    Reader r(payload);
    CommandRequest c;
    c.command = r.str();
    c.argument = decode_value(r);
    r.expect_end("command argument");
    return c;
}

Bytes encode_command_reply(const CommandReply& c)
{
    Bytes out;
    Writer w(out);
    encode_value(w, c.value);
    w.u8(static_cast<std::uint8_t>(c.source));
    return out;
}

CommandReply decode_command_reply(std::span<const std::uint8_t> payload)
{
    Reader r(payload);
    CommandReply c;
    c.value = decode_value(r);
    auto src = r.u8();
    if (src > 1)
        bad_value("data source " + std::to_string(src));
    c.source = static_cast<DataSource>(src);
    r.expect_end("command reply");
    return c;
}

} // namespace tng::wire
