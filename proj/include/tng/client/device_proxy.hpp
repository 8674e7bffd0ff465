#pragma once

#include "tng/core/attribute.hpp"
#include "tng/core/command_info.hpp"
#include "tng/core/device_name.hpp"
#include "tng/core/value.hpp"
#include "tng/net/socket.hpp"
#include "tng/wire/messages.hpp"

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <variant>

namespace tng::client {

class Database;
class Connection;

struct ProxyOptions {
    std::chrono::milliseconds timeout{10'000};
    std::chrono::milliseconds connect_timeout{2'000};
};

/// Result delivered to an asynchronous command callback.
struct AsyncResult {
    std::string command;
    std::variant<TangoValue, DevErrorList> result;

    bool ok() const noexcept { return result.index() == 0; }
    const TangoValue& value() const { return std::get<TangoValue>(result); }
    const DevErrorList& errors() const { return std::get<DevErrorList>(result); }
};

using CommandCallback = std::function<void(const AsyncResult&)>;

using AttrReadResult = wire::AttrReadResult;
using CommandReply = wire::CommandReply;

// Application-side handle on one device.
//
// Accepts "domain/family/member" (resolved through the database) or
// "host:port/domain/family/member" (direct, no database). Construction never
// touches the network; the connection is opened by the first call.
//
// Reconnection: a transport failure that happens before a request has been
// completely written triggers one re-import from the database and one retry.
// Failures after the request was written are reported, never retried.
class DeviceProxy {
public:
    explicit DeviceProxy(std::string_view name, ProxyOptions options = {});
    DeviceProxy(std::string_view name, std::shared_ptr<Database> db, ProxyOptions options = {});
    ~DeviceProxy();

    DeviceProxy(const DeviceProxy&) = delete;
    DeviceProxy& operator=(const DeviceProxy&) = delete;

    const DeviceName& name() const noexcept { return name_; }

    TangoValue command_inout(std::string_view command, const TangoValue& argin = {});
    CommandReply command_inout_reply(std::string_view command, const TangoValue& argin = {});

    /// Returns at once; the callback runs later on this proxy's delivery thread,
    /// exactly once, in submission order.
    void command_inout_async(std::string_view command, const TangoValue& argin, CommandCallback callback);

    std::vector<AttrReadResult> read_attributes(const std::vector<std::string>& names);
    /// Throws the attribute's own error stack on failure.
    AttributeValue read_attribute(const std::string& name);
    void write_attributes(const std::vector<AttributeValue>& values);
    void write_attribute(const AttributeValue& value) { write_attributes({value}); }

    /// Empty list: every attribute.
    std::vector<AttributeConfig> get_attribute_config(const std::vector<std::string>& names = {});
    void set_attribute_config(const std::vector<AttributeConfig>& configs);
    std::vector<CommandInfo> command_list_query();
    CommandInfo command_query(std::string_view command);

    /// Round trip time in microseconds.
    std::int64_t ping();
    DeviceState state();
    std::string status();

    bool connected() const;
    /// Current endpoint, resolving it if needed.
    net::Endpoint endpoint();

private:
    wire::Bytes call(wire::OpCode op, wire::Bytes payload);
    void submit(wire::OpCode op, wire::Bytes payload, std::function<void(std::variant<wire::Bytes, DevErrorList>)> done);
    std::shared_ptr<Connection> ensure_connection(bool force_resolve);
    void resolve();

    class Delivery;

    DeviceName name_;
    std::optional<net::Endpoint> fixed_endpoint_;
    std::shared_ptr<Database> db_;
    ProxyOptions options_;

    mutable std::mutex mutex_;
    std::optional<net::Endpoint> endpoint_;
    std::shared_ptr<Connection> connection_;
    std::unique_ptr<Delivery> delivery_;
};

/// Shared database handle for TNG_HOST, created on first use. Throws DB_UNREACHABLE when unset.
std::shared_ptr<Database> default_database();

} // namespace tng::client
