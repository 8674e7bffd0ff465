#include "tng/astor/fleet.hpp"

#include "tng/core/clock.hpp"
#include "tng/core/reasons.hpp"
#include "tng/starter/naming.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

namespace tng::astor {

namespace {

constexpr const char* kOrigin = "astor";

bool unreachable(const DevFailed& e)
{
    return e.has_reason(reason::DeviceUnreachable) || e.has_reason(reason::DeviceTimedOut) ||
           e.has_reason(reason::DeviceNotDefined);
}

std::int64_t now_ms() { return SystemClock::instance().now_ms(); }

// The database's own registration and the Starters are the fleet's control
// plane; they show up as the host's starter state, not as rows.
bool control_plane(const std::string& server_id)
{
    return iequals(server_id, db::kDatabaseServer) || iequals(server_id.substr(0, 8), "Starter/");
}

std::string_view action_name(Action a) { return a == Action::Start ? "start" : "stop"; }

} // namespace

nlohmann::json to_json(const FleetView& v)
{
    auto hosts = nlohmann::json::array();
    for (const auto& h : v.hosts) {
        auto servers = nlohmann::json::array();
        for (const auto& s : h.servers)
            servers.push_back(
                {{"server_id", s.server_id}, {"level", s.level}, {"observed", s.observed}, {"devices", s.devices}});
        hosts.push_back({{"host", h.host}, {"starter_state", h.starter_state}, {"servers", std::move(servers)}});
    }
    return {{"hosts", std::move(hosts)}};
}

FleetView fleet_from_json(const nlohmann::json& j)
{
    FleetView v;
    for (const auto& h : j.at("hosts")) {
        HostView hv{h.at("host"), h.at("starter_state"), {}};
        for (const auto& s : h.at("servers"))
            hv.servers.push_back({s.at("server_id"), s.at("level"), s.at("observed"), s.at("devices")});
        v.hosts.push_back(std::move(hv));
    }
    return v;
}

std::string render_table(const FleetView& v)
{
    if (v.empty())
        return "no servers registered\n";
    std::size_t w = 9;
    for (const auto& h : v.hosts)
        for (const auto& s : h.servers)
            w = std::max(w, s.server_id.size());
    std::ostringstream out;
    for (const auto& h : v.hosts) {
        out << "host " << h.host << "  starter " << h.starter_state << '\n';
        out << "  " << std::left << std::setw(static_cast<int>(w)) << "SERVER" << "  LEVEL  " << std::setw(9)
            << "STATE" << "  DEVICES\n";
        for (const auto& s : h.servers)
            out << "  " << std::setw(static_cast<int>(w)) << s.server_id << "  " << std::setw(5) << s.level << "  "
                << std::setw(9) << s.observed << "  " << s.devices << '\n';
    }
    return out.str();
}

bool RunReport::ok() const { return failures() == 0; }

std::size_t RunReport::failures() const
{
    return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [](auto& r) { return !r.ok; }));
}

nlohmann::json to_json(const RunReport& r)
{
    auto items = nlohmann::json::array();
    for (const auto& a : r.results)
        items.push_back({{"server_id", a.server_id},
                         {"level", a.level},
                         {"action", action_name(a.action)},
                         {"ok", a.ok},
                         {"reason", a.reason},
                         {"message", a.message},
                         {"issued_ms", a.issued_ms},
                         {"confirmed_ms", a.confirmed_ms}});
    return {{"ok", r.ok()}, {"failures", r.failures()}, {"results", std::move(items)}};
}

std::string render_report(const RunReport& r)
{
    std::ostringstream out;
    for (const auto& a : r.results) {
        out << action_name(a.action) << ' ' << a.server_id << " (level " << a.level << "): ";
        if (a.ok)
            out << "ok in " << (a.confirmed_ms - a.issued_ms) << " ms\n";
        else
            out << "FAILED " << a.reason << ": " << a.message << '\n';
    }
    if (r.results.empty())
        out << "nothing to do\n";
    else if (!r.ok())
        out << r.failures() << " of " << r.results.size() << " failed\n";
    return out.str();
}

Fleet::Fleet(std::shared_ptr<client::Database> db, FleetOptions options) : db_(std::move(db)), options_(options)
{
    options_.workers = std::max<std::size_t>(options_.workers, 1);
}

FleetView Fleet::status()
{
    std::map<std::string, HostView> hosts;
    std::map<std::string, std::map<std::string, std::string>> supervised; // host -> id -> observed
    for (const auto& id : db_->get_server_list("*")) {
        if (control_plane(id))
            continue;
        auto rec = db_->get_server_info(id);
        ServerRow row{rec.server_id, rec.level, "", 0};
        for (const auto& c : rec.classes)
            row.devices += c.devices.size();
        auto [it, fresh] = hosts.try_emplace(rec.host, HostView{rec.host, "", {}});
        if (fresh) {
            auto& states = supervised[rec.host];
            try {
                client::DeviceProxy st(starter::starter_device_name(rec.host), db_,
                                       {options_.call_timeout, options_.call_timeout});
                it->second.starter_state = std::string(to_string(st.state()));
                const auto reply = st.command_inout("DevGetServerStates");
                for (const auto& line : reply.get<std::vector<std::string>>()) {
                    std::istringstream in(line);
                    std::string sid, observed;
                    in >> sid >> observed;
                    states[to_lower(sid)] = observed;
                }
            } catch (const DevFailed&) {
                it->second.starter_state = "UNKNOWN";
            }
        }
        if (rec.level == 0) {
            bool exported = false;
            try {
                exported = db_->import_device(db::admin_device_name(rec.server_id)).exported;
            } catch (const DevFailed& e) {
                if (!e.has_reason(reason::DeviceNotDefined))
                    throw;
            }
            row.observed = exported ? "Running" : "Stopped";
        } else if (it->second.starter_state == "UNKNOWN") {
            row.observed = "UNKNOWN";
        } else {
            auto& states = supervised[rec.host];
            auto s = states.find(to_lower(rec.server_id));
            row.observed = s == states.end() ? "UNKNOWN" : s->second;
        }
        it->second.servers.push_back(std::move(row));
    }
    FleetView v;
    for (auto& [_, h] : hosts) {
        std::sort(h.servers.begin(), h.servers.end(), [](const ServerRow& a, const ServerRow& b) {
            return std::tie(a.level, a.server_id) < std::tie(b.level, b.server_id);
        });
        v.hosts.push_back(std::move(h));
    }
    return v;
}

std::vector<Fleet::Target> Fleet::targets()
{
    std::vector<Target> out;
    for (const auto& id : db_->get_server_list("*")) {
        if (control_plane(id))
            continue;
        auto rec = db_->get_server_info(id);
        if (rec.level > 0)
            out.push_back({rec.server_id, rec.host, rec.level});
    }
    return out;
}

Fleet::Target Fleet::lookup(const std::string& server_id)
{
    try {
        auto rec = db_->get_server_info(server_id);
        return {rec.server_id, rec.host, rec.level};
    } catch (const DevFailed& e) {
        if (e.has_reason(reason::ServerNotDefined) || e.has_reason(reason::MalformedName) ||
            e.has_reason(reason::MalformedArgument))
            throw e.appended(reason::UnknownServer, "server " + server_id + " is not registered", kOrigin);
        throw;
    }
}

ActionResult Fleet::act(const Target& t, Action a)
{
    ActionResult r{t.server_id, t.level, a, false, "", "", 0, 0};
    const char* cmd = a == Action::Start ? "DevStart" : "DevStop";
    const char* list = a == Action::Start ? "DevGetRunningServers" : "DevGetStopServers";
    const auto deadline = std::chrono::steady_clock::now() + options_.server_timeout;
    try {
        client::DeviceProxy st(starter::starter_device_name(t.host), db_,
                               {options_.call_timeout, options_.call_timeout});
        try {
            st.command_inout(cmd, t.server_id);
            r.issued_ms = now_ms();
            for (;;) {
                auto ids = st.command_inout(list).get<std::vector<std::string>>();
                if (std::any_of(ids.begin(), ids.end(), [&](auto& id) { return iequals(id, t.server_id); })) {
                    r.confirmed_ms = now_ms();
                    r.ok = true;
                    return r;
                }
                if (std::chrono::steady_clock::now() >= deadline)
                    break;
                std::this_thread::sleep_for(options_.poll);
            }
        } catch (const DevFailed& e) {
            if (unreachable(e))
                throw e.appended(reason::StarterUnreachable,
                                 "starter " + starter::starter_device_name(t.host) + " is unreachable", kOrigin);
            throw;
        }
        r.reason = std::string(reason::DeviceTimedOut);
        r.message = t.server_id + " did not " + std::string(action_name(a)) + " within " +
                    std::to_string(options_.server_timeout.count()) + " ms";
    } catch (const DevFailed& e) {
        r.reason = e.outer_reason();
        r.message = e.errors().back().description;
    }
    return r;
}

RunReport Fleet::run(Action a)
{
    auto all = targets();
    std::map<std::uint32_t, std::vector<Target>> levels;
    for (auto& t : all)
        levels[t.level].push_back(std::move(t));
    std::vector<std::vector<Target>*> order;
    for (auto& [_, ts] : levels)
        order.push_back(&ts);
    if (a == Action::Stop)
        std::reverse(order.begin(), order.end());

    RunReport report;
    for (auto* level : order) {
        std::vector<ActionResult> results(level->size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i; (i = next++) < level->size();)
                results[i] = act((*level)[i], a);
        };
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < std::min(options_.workers, level->size()); ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
        for (auto& r : results)
            report.results.push_back(std::move(r));
    }
    return report;
}

RunReport Fleet::start_all() { return run(Action::Start); }
RunReport Fleet::stop_all() { return run(Action::Stop); }

ActionResult Fleet::start(const std::string& server_id)
{
    auto r = act(lookup(server_id), Action::Start);
    if (r.reason == reason::StarterUnreachable)
        throw DevFailed(r.reason, r.message, kOrigin);
    return r;
}

ActionResult Fleet::stop(const std::string& server_id)
{
    auto r = act(lookup(server_id), Action::Stop);
    if (r.reason == reason::StarterUnreachable)
        throw DevFailed(r.reason, r.message, kOrigin);
    return r;
}

void Fleet::issue(const std::string& server_id, Action a)
{
    auto t = lookup(server_id);
    try {
        client::DeviceProxy st(starter::starter_device_name(t.host), db_,
                               {options_.call_timeout, options_.call_timeout});
        st.command_inout(a == Action::Start ? "DevStart" : "DevStop", t.server_id);
    } catch (const DevFailed& e) {
        if (unreachable(e))
            throw e.appended(reason::StarterUnreachable,
                             "starter " + starter::starter_device_name(t.host) + " is unreachable", kOrigin);
        throw;
    }
}

} // namespace tng::astor
