#include "tng/starter/starter_device.hpp"

#include "tng/client/database.hpp"
#include "tng/core/device_name.hpp"
#include "tng/core/reasons.hpp"

#include <filesystem>

namespace tng::starter {

namespace {

class StarterDevice final : public server::Device {
public:
    using Device::Device;

    void init_device() override
    {
        if (!database())
            throw_dev_failed(reason::DbUnreachable, "the Starter needs a database", "Starter");
        SupervisorConfig cfg;
        cfg.host = name().member();
        cfg.start_paths = properties().has("StartDsPath") ? properties().get_string_list("StartDsPath")
                                                           : std::vector<std::string>{proc::self_dir()};
        cfg.log_dir = properties().has("LogDir") ? properties().get_string("LogDir")
                                                 : std::filesystem::temp_directory_path().string();
        if (properties().has("ScanPeriodMs"))
            cfg.scan_period = std::chrono::milliseconds(properties().get_integer("ScanPeriodMs"));
        cfg.db_endpoint = database()->endpoint().str();
        sup_ = std::make_unique<Supervisor>(cfg, database_directory(database()));
        set_status("Supervising servers of host " + cfg.host);
    }

    void delete_device() override { sup_.reset(); }

    DeviceState dev_state() override { return sup_ ? sup_->state() : get_state(); }

    std::string dev_status() override
    {
        if (!sup_)
            return get_status();
        std::size_t running = 0, total = 0;
        for (const auto& v : sup_->views()) {
            ++total;
            running += v.observed == Observed::Running;
        }
        return get_status() + ": " + std::to_string(running) + " of " + std::to_string(total) + " running";
    }

    Supervisor& sup()
    {
        if (!sup_)
            throw_dev_failed(reason::CommandNotAllowed, "the Starter failed to initialise: " + get_status(),
                             "Starter");
        return *sup_;
    }

private:
    std::unique_ptr<Supervisor> sup_;
};

StarterDevice& self(server::Device& d) { return static_cast<StarterDevice&>(d); }

} // namespace

std::shared_ptr<server::DeviceClass> make_starter_class()
{
    auto cls = server::DeviceClass::make<StarterDevice>(kStarterClass, "Per-host device-server supervisor");
    auto cmd = [&](std::string name, TypeTag in, TypeTag out, std::string desc, server::CommandHandler h) {
        cls->command(CommandInfo{std::move(name), in, out, std::move(desc), {}}, std::move(h));
    };
    cmd("DevStart", TypeTag::DevString, TypeTag::DevVoid, "Start a server of this host", [](auto& d, auto& in) {
        self(d).sup().start(in.template get<std::string>());
        return TangoValue{};
    });
    cmd("DevStop", TypeTag::DevString, TypeTag::DevVoid, "Stop a server of this host", [](auto& d, auto& in) {
        self(d).sup().stop(in.template get<std::string>());
        return TangoValue{};
    });
    cmd("DevGetRunningServers", TypeTag::DevVoid, TypeTag::DevVarStringArray, "Servers observed running",
        [](auto& d, auto&) { return TangoValue(self(d).sup().running_servers()); });
    cmd("DevGetStopServers", TypeTag::DevVoid, TypeTag::DevVarStringArray, "Servers not running",
        [](auto& d, auto&) { return TangoValue(self(d).sup().stopped_servers()); });
    cmd("DevGetServerStates", TypeTag::DevVoid, TypeTag::DevVarStringArray,
        "\"<server_id> <Observed> <level>\" per supervised server", [](auto& d, auto&) {
            std::vector<std::string> out;
            for (const auto& v : self(d).sup().views())
                out.push_back(v.server_id + " " + std::string(to_string(v.observed)) + " " + std::to_string(v.level));
            return TangoValue(std::move(out));
        });
    cmd("UpdateServersInfo", TypeTag::DevVoid, TypeTag::DevVoid, "Re-read registrations and liveness now",
        [](auto& d, auto&) {
            self(d).sup().scan();
            return TangoValue{};
        });
    cls->property({"StartDsPath", server::PropertyType::StringList, {}, "Directories holding server executables"});
    cls->property({"LogDir", server::PropertyType::String, {}, "Directory for per-server log files"});
    cls->property({"ScanPeriodMs", server::PropertyType::Integer, {"2000"}, "Registration and liveness scan period"});
    return cls;
}

} // namespace tng::starter
