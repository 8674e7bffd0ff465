#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tng::db {

inline constexpr const char* kDatabaseDevice = "sys/database/2";
inline constexpr const char* kDatabaseServer = "DataBaseds/2";
inline constexpr const char* kDatabaseClass = "DataBase";
inline constexpr const char* kAdminClass = "DServer";

struct ClassBinding {
    std::string class_name;
    std::vector<std::string> devices;
    bool operator==(const ClassBinding&) const = default;
};

struct ServerRecord {
    std::string server_id; // "ExecName/instance", original case
    std::string host;
    std::uint32_t level = 0; // 0: manual, never started by a Starter
    std::vector<ClassBinding> classes;
    bool operator==(const ServerRecord&) const = default;
};

struct DeviceRecord {
    std::string name; // canonical lowercase
    std::string class_name;
    std::string server_id;
    bool exported = false;
    std::string endpoint; // "host:port"; empty when never exported
    std::int64_t export_time_ms = 0;
    bool operator==(const DeviceRecord&) const = default;
};

struct Property {
    std::string name;
    std::vector<std::string> values;
    bool operator==(const Property&) const = default;
};

/// Admin device name of a server: "dserver/<exec>/<instance>".
std::string admin_device_name(const std::string& server_id);

} // namespace tng::db
