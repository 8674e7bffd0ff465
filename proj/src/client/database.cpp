#include "tng/client/database.hpp"

#include "tng/core/reasons.hpp"
#include "tng/db/protocol.hpp"

#include <cstdlib>

namespace tng::client {

namespace pr = db::protocol;
using Strings = std::vector<std::string>;

Database::Database(net::Endpoint endpoint, ProxyOptions options)
    : endpoint_(endpoint), proxy_(endpoint.str() + "/" + db::kDatabaseDevice, options)
{
}

std::shared_ptr<Database> Database::from_env()
{
    const char* host = std::getenv("TNG_HOST");
    if (!host || !*host)
        throw_dev_failed(reason::DbUnreachable, "TNG_HOST is not set", "Database::from_env");
    try {
        return std::make_shared<Database>(net::Endpoint::parse(host));
    } catch (const DevFailed& e) {
        throw e.appended(reason::DbUnreachable, "TNG_HOST is not host:port", "Database::from_env");
    }
}

void Database::add_server(const db::ServerRecord& server)
{
    proxy_.command_inout(pr::AddServer, TangoValue(pr::pack_server(server)));
}

void Database::delete_server(const std::string& server_id)
{
    proxy_.command_inout(pr::DeleteServer, TangoValue(server_id));
}

db::ServerRecord Database::get_server_info(const std::string& server_id)
{
    return pr::unpack_server(proxy_.command_inout(pr::GetServerInfo, TangoValue(server_id)).get<Strings>());
}

std::vector<std::string> Database::get_device_list(const std::string& server_id, const std::string& class_name)
{
    return proxy_.command_inout(pr::GetDeviceList, TangoValue(Strings{server_id, class_name})).get<Strings>();
}

void Database::export_device(const std::string& name, const std::string& endpoint, const std::string& server_id)
{
    proxy_.command_inout(pr::ExportDevice, TangoValue(Strings{name, endpoint, server_id}));
}

void Database::unexport_device(const std::string& name)
{
    proxy_.command_inout(pr::UnExportDevice, TangoValue(name));
}

void Database::unexport_server(const std::string& server_id)
{
    proxy_.command_inout(pr::UnExportServer, TangoValue(server_id));
}

db::DeviceRecord Database::import_device(const std::string& name)
{
    return pr::unpack_device(proxy_.command_inout(pr::ImportDevice, TangoValue(name)).get<LongStringArray>());
}

std::vector<db::Property> Database::get_property(const std::string& owner, const std::vector<std::string>& names)
{
    Strings args{owner};
    args.insert(args.end(), names.begin(), names.end());
    return pr::unpack_properties(proxy_.command_inout(pr::GetProperty, TangoValue(args)).get<Strings>());
}

void Database::put_property(const std::string& owner, const std::vector<db::Property>& props)
{
    proxy_.command_inout(pr::PutProperty, TangoValue(pr::pack_properties(owner, props)));
}

void Database::delete_property(const std::string& owner, const std::vector<std::string>& names)
{
    Strings args{owner};
    args.insert(args.end(), names.begin(), names.end());
    proxy_.command_inout(pr::DeleteProperty, TangoValue(args));
}

std::vector<std::string> Database::get_property_list(const std::string& owner)
{
    return proxy_.command_inout(pr::GetPropertyList, TangoValue(owner)).get<Strings>();
}

std::vector<std::string> Database::browse_devices(const std::string& pattern)
{
    return proxy_.command_inout(pr::BrowseDevices, TangoValue(pattern)).get<Strings>();
}

std::vector<std::string> Database::get_server_list(const std::string& pattern)
{
    return proxy_.command_inout(pr::GetServerList, TangoValue(pattern)).get<Strings>();
}

std::vector<std::string> Database::get_host_list(const std::string& pattern)
{
    return proxy_.command_inout(pr::GetHostList, TangoValue(pattern)).get<Strings>();
}

std::vector<std::string> Database::get_class_list(const std::string& pattern)
{
    return proxy_.command_inout(pr::GetClassList, TangoValue(pattern)).get<Strings>();
}

} // namespace tng::client
