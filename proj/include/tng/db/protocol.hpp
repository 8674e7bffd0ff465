#pragma once

// Argument layouts of the database device commands. Shared by the client
// wrapper and the server-side device so both ends agree on one definition.

#include "tng/core/value.hpp"
#include "tng/db/records.hpp"

namespace tng::db::protocol {

inline constexpr const char* AddServer = "DbAddServer";
inline constexpr const char* DeleteServer = "DbDeleteServer";
inline constexpr const char* GetServerInfo = "DbGetServerInfo";
inline constexpr const char* GetDeviceList = "DbGetDeviceList";
inline constexpr const char* ExportDevice = "DbExportDevice";
inline constexpr const char* UnExportDevice = "DbUnExportDevice";
inline constexpr const char* UnExportServer = "DbUnExportServer";
inline constexpr const char* ImportDevice = "DbImportDevice";
inline constexpr const char* GetProperty = "DbGetProperty";
inline constexpr const char* PutProperty = "DbPutProperty";
inline constexpr const char* DeleteProperty = "DbDeleteProperty";
inline constexpr const char* GetPropertyList = "DbGetPropertyList";
inline constexpr const char* BrowseDevices = "DbBrowseDevices";
inline constexpr const char* GetServerList = "DbGetServerList";
inline constexpr const char* GetHostList = "DbGetHostList";
inline constexpr const char* GetClassList = "DbGetClassList";

// ServerRecord <-> [server_id, host, level, n_classes, (class, n_devices, devices...)...]
std::vector<std::string> pack_server(const ServerRecord& s);
ServerRecord unpack_server(const std::vector<std::string>& v);

// DeviceRecord <-> longs [exported], strings [name, endpoint, class, server_id, export_time_ms]
LongStringArray pack_device(const DeviceRecord& d);
DeviceRecord unpack_device(const LongStringArray& v);

// Properties <-> [owner, n_props, (name, n_values, values...)...]
std::vector<std::string> pack_properties(const std::string& owner, const std::vector<Property>& props);
std::vector<Property> unpack_properties(const std::vector<std::string>& v, std::string* owner = nullptr);

} // namespace tng::db::protocol
