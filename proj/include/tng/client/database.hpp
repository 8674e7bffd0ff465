#pragma once

#include "tng/client/device_proxy.hpp"
#include "tng/db/records.hpp"

namespace tng::client {

// Typed wrapper over the database device "sys/database/2".
class Database {
public:
    explicit Database(net::Endpoint endpoint, ProxyOptions options = {});

    /// Reads TNG_HOST; throws DB_UNREACHABLE when it is unset or malformed.
    static std::shared_ptr<Database> from_env();

    const net::Endpoint& endpoint() const noexcept { return endpoint_; }
    DeviceProxy& proxy() noexcept { return proxy_; }

    void add_server(const db::ServerRecord& server);
    void delete_server(const std::string& server_id);
    db::ServerRecord get_server_info(const std::string& server_id);
    std::vector<std::string> get_device_list(const std::string& server_id, const std::string& class_name);

    void export_device(const std::string& name, const std::string& endpoint, const std::string& server_id);
    void unexport_device(const std::string& name);
    void unexport_server(const std::string& server_id);
    db::DeviceRecord import_device(const std::string& name);

    std::vector<db::Property> get_property(const std::string& owner, const std::vector<std::string>& names);
    void put_property(const std::string& owner, const std::vector<db::Property>& props);
    void delete_property(const std::string& owner, const std::vector<std::string>& names);
    std::vector<std::string> get_property_list(const std::string& owner);

    std::vector<std::string> browse_devices(const std::string& pattern);
    std::vector<std::string> get_server_list(const std::string& pattern = "*");
    std::vector<std::string> get_host_list(const std::string& pattern = "*");
    std::vector<std::string> get_class_list(const std::string& pattern = "*");

private:
    net::Endpoint endpoint_;
    DeviceProxy proxy_;
};

} // namespace tng::client
