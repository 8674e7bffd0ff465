#include "tng/db/database_device.hpp"

#include "tng/core/reasons.hpp"
#include "tng/db/protocol.hpp"

namespace tng::db {

namespace {

using server::Device;
using Strings = std::vector<std::string>;
namespace pr = protocol;

class DatabaseDevice final : public Device {
public:
    using Device::Device;
    void init_device() override
    {
        set_state(DeviceState::ON);
        set_status("Database is running");
    }
};

const Strings& at_least(const TangoValue& in, std::size_t n, const char* cmd)
{
    const auto& v = in.get<Strings>();
    if (v.size() < n)
        throw_dev_failed(reason::MalformedArgument,
                         std::string(cmd) + " needs at least " + std::to_string(n) + " strings", cmd);
    return v;
}

} // namespace

std::shared_ptr<server::DeviceClass> make_database_class(std::shared_ptr<DatabaseStore> store)
{
    auto cls = std::make_shared<server::DeviceClass>(
        kDatabaseClass,
        [](server::DeviceClass& c, const DeviceName& n) { return std::make_unique<DatabaseDevice>(c, n); },
        "Configuration and naming database");
    auto& s = *store;
    auto keep = store; // handlers share ownership of the store
    auto add = [&](const char* name, TypeTag in, TypeTag out, const char* doc, server::CommandHandler h) {
        cls->command(CommandInfo{name, in, out, doc, {}},
                     [keep, h = std::move(h)](Device& d, const TangoValue& v) { return h(d, v); });
    };
    using T = TypeTag;

    add(pr::AddServer, T::DevVarStringArray, T::DevVoid, "[id, host, level, n_classes, (class, n, devices...)...]",
        [&s](Device&, const TangoValue& in) {
            s.add_server(pr::unpack_server(in.get<Strings>()));
            return TangoValue{};
        });
    add(pr::DeleteServer, T::DevString, T::DevVoid, "server id", [&s](Device&, const TangoValue& in) {
        s.delete_server(in.get<std::string>());
        return TangoValue{};
    });
    add(pr::GetServerInfo, T::DevString, T::DevVarStringArray, "server id -> server record",
        [&s](Device&, const TangoValue& in) { return TangoValue(pr::pack_server(s.get_server_info(in.get<std::string>()))); });
    add(pr::GetDeviceList, T::DevVarStringArray, T::DevVarStringArray, "[server id, class] -> device names",
        [&s](Device&, const TangoValue& in) {
            const auto& v = at_least(in, 2, pr::GetDeviceList);
            return TangoValue(s.get_device_list(v[0], v[1]));
        });
    add(pr::ExportDevice, T::DevVarStringArray, T::DevVoid, "[device, host:port, server id]",
        [&s](Device&, const TangoValue& in) {
            const auto& v = at_least(in, 3, pr::ExportDevice);
            s.export_device(v[0], v[1], v[2]);
            return TangoValue{};
        });
    add(pr::UnExportDevice, T::DevString, T::DevVoid, "device name", [&s](Device&, const TangoValue& in) {
        s.unexport_device(in.get<std::string>());
        return TangoValue{};
    });
    add(pr::UnExportServer, T::DevString, T::DevVoid, "server id", [&s](Device&, const TangoValue& in) {
        s.unexport_server(in.get<std::string>());
        return TangoValue{};
    });
    add(pr::ImportDevice, T::DevString, T::DevVarLongStringArray,
        "device -> longs [exported], strings [name, endpoint, class, server, export_time_ms]",
        [&s](Device&, const TangoValue& in) { return TangoValue(pr::pack_device(s.import_device(in.get<std::string>()))); });
    add(pr::GetProperty, T::DevVarStringArray, T::DevVarStringArray, "[owner, names...] -> properties",
        [&s](Device&, const TangoValue& in) {
            const auto& v = at_least(in, 1, pr::GetProperty);
            Strings names(v.begin() + 1, v.end());
            return TangoValue(pr::pack_properties(v[0], s.get_property(v[0], names)));
        });
    add(pr::PutProperty, T::DevVarStringArray, T::DevVoid, "[owner, n, (name, count, values...)...]",
        [&s](Device&, const TangoValue& in) {
            std::string owner;
            auto props = pr::unpack_properties(in.get<Strings>(), &owner);
            s.put_property(owner, props);
            return TangoValue{};
        });
    add(pr::DeleteProperty, T::DevVarStringArray, T::DevVoid, "[owner, names...]",
        [&s](Device&, const TangoValue& in) {
            const auto& v = at_least(in, 1, pr::DeleteProperty);
            s.delete_property(v[0], Strings(v.begin() + 1, v.end()));
            return TangoValue{};
        });
    add(pr::GetPropertyList, T::DevString, T::DevVarStringArray, "owner -> property names",
        [&s](Device&, const TangoValue& in) { return TangoValue(s.get_property_list(in.get<std::string>())); });
    add(pr::BrowseDevices, T::DevString, T::DevVarStringArray, "d/f/m pattern -> device names",
        [&s](Device&, const TangoValue& in) { return TangoValue(s.browse_devices(in.get<std::string>())); });
    add(pr::GetServerList, T::DevString, T::DevVarStringArray, "pattern -> server ids",
        [&s](Device&, const TangoValue& in) { return TangoValue(s.get_server_list(in.get<std::string>())); });
    add(pr::GetHostList, T::DevString, T::DevVarStringArray, "pattern -> hosts",
        [&s](Device&, const TangoValue& in) { return TangoValue(s.get_host_list(in.get<std::string>())); });
    add(pr::GetClassList, T::DevString, T::DevVarStringArray, "pattern -> classes",
        [&s](Device&, const TangoValue& in) { return TangoValue(s.get_class_list(in.get<std::string>())); });
    return cls;
}

} // namespace tng::db
