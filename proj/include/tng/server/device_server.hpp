#pragma once

#include "tng/net/socket.hpp"
#include "tng/polling/poller.hpp"
#include "tng/server/device_class.hpp"
#include "tng/server/property_store.hpp"
#include "tng/wire/messages.hpp"

#include <list>
#include <shared_mutex>

namespace tng::server {

inline constexpr const char* kPolledCmdProperty = "polled_cmd";
inline constexpr const char* kPolledAttrProperty = "polled_attr";

// Test-only switches for provoking failure modes from inside the server.
struct FaultInjection {
    /// Each positive count executes the next command and then drops the connection instead of replying.
    std::atomic<int> drop_reply_after_execute{0};
};

class ServerConnection;

// Hosts devices of one or more classes and serves them over TCP. Every call into
// a device (client request or poll tick) runs under that device's own mutex;
// different devices proceed concurrently.
class DeviceServer {
public:
    explicit DeviceServer(std::string server_id, std::shared_ptr<PropertyStore> properties = nullptr,
                          const Clock& clock = SystemClock::instance());
    ~DeviceServer();

    DeviceServer(const DeviceServer&) = delete;
    DeviceServer& operator=(const DeviceServer&) = delete;

    const std::string& server_id() const noexcept { return server_id_; }

    void register_class(std::shared_ptr<DeviceClass> cls);
    const std::vector<std::shared_ptr<DeviceClass>>& classes() const noexcept { return classes_; }
    DeviceClass* find_class(std::string_view name) const;

    /// Creates the device, loads its properties and runs init. A failing init leaves
    /// the device in FAULT with the error as status; it is still served.
    Device& add_device(DeviceClass& cls, std::string_view name);
    Device& add_device(std::string_view class_name, std::string_view name);
    /// The "dserver/<exec>/<instance>" administration device.
    Device& add_admin_device();

    /// Handed to devices created afterwards, see Device::database().
    void set_database(std::shared_ptr<client::Database> db) { database_ = std::move(db); }
    /// Backs the admin Kill command; without one Kill is refused. Must not block.
    void set_kill_handler(std::function<void()> handler) { kill_handler_ = std::move(handler); }
    /// Allows the admin FaultInject command (off by default).
    void enable_fault_commands(bool on) noexcept { fault_commands_ = on; }

    std::vector<DeviceName> device_names() const;
    Device* find_device(const DeviceName& name) const;

    // Dispatch. Throws DevFailed exactly as a remote client would observe it.
    wire::CommandReply command_inout(const DeviceName& dev, std::string_view command, const TangoValue& argin);
    std::vector<wire::AttrReadResult> read_attributes(const DeviceName& dev, const std::vector<std::string>& names);
    void write_attributes(const DeviceName& dev, const std::vector<AttributeValue>& values);
    std::vector<CommandInfo> command_list(const DeviceName& dev);
    CommandInfo command_query(const DeviceName& dev, std::string_view command);
    std::vector<AttributeConfig> attribute_config(const DeviceName& dev, const std::vector<std::string>& names);
    void set_attribute_config(const DeviceName& dev, const std::vector<AttributeConfig>& configs);
    DeviceState state(const DeviceName& dev);
    std::string status(const DeviceName& dev);

    // Polling.
    void add_poll(const DeviceName& dev, const polling::PollEntry& entry, bool persist = true);
    void remove_poll(const DeviceName& dev, polling::PollKind kind, const std::string& name, bool persist = true);
    void stop_polling();
    void start_polling();
    std::vector<std::string> poll_status(const DeviceName& dev);
    /// Re-applies polled_cmd / polled_attr read at init. Bad entries are logged and skipped.
    void restore_polling();
    polling::PollCache& cache(const DeviceName& dev);
    polling::DevicePoller& poller(const DeviceName& dev);

    // Network.
    std::uint16_t listen(const std::string& bind_host = "0.0.0.0", std::uint16_t port = 0);
    std::uint16_t port() const noexcept { return port_; }
    void stop_listening();

    /// Stops polling and serving, then deletes devices in reverse creation order.
    void shutdown();

    /// Handler executions, client and poller combined.
    std::uint64_t execution_count(const DeviceName& dev, std::string_view command) const;
    FaultInjection& faults() noexcept { return faults_; }

    /// Turns one request into a reply; used by every connection.
    wire::ReplyEnvelope handle(const wire::RequestEnvelope& req, bool& drop_connection);

private:
    struct Slot;

    Slot& slot(const DeviceName& dev) const;
    Device& create(DeviceClass& cls, const DeviceName& name);
    void load_properties(Slot& s);
    void init_locked(Slot& s, bool first);
    TangoValue execute_locked(Slot& s, const CommandEntry& cmd, const TangoValue& argin);
    wire::AttrReadResult read_locked(Slot& s, const AttributeEntry& attr);
    polling::CacheSample acquire(Slot& s, const polling::PollEntry& entry);
    void persist_polling(Slot& s, polling::PollKind kind);
    void accept_loop();

    std::string server_id_;
    std::shared_ptr<PropertyStore> properties_;
    const Clock& clock_;
    FaultInjection faults_;

    std::vector<std::shared_ptr<DeviceClass>> classes_;
    std::shared_ptr<DeviceClass> admin_class_;
    std::shared_ptr<client::Database> database_;
    std::function<void()> kill_handler_;
    std::atomic<bool> fault_commands_{false};

    mutable std::shared_mutex table_mutex_;
    std::vector<std::unique_ptr<Slot>> slots_; // creation order
    std::map<DeviceName, Slot*> by_name_;

    std::mutex net_mutex_;
    net::Listener listener_;
    std::uint16_t port_ = 0;
    std::thread accept_thread_;
    std::list<std::shared_ptr<ServerConnection>> connections_;
    bool polling_stopped_ = false;
    bool shut_down_ = false;
};

} // namespace tng::server
