#include "tng/starter/supervisor.hpp"

#include "tng/client/database.hpp"
#include "tng/core/device_name.hpp"
#include "tng/core/errors.hpp"
#include "tng/core/log.hpp"
#include "tng/core/reasons.hpp"

#include <csignal>

namespace tng::starter {

namespace {

constexpr const char* kTag = "starter";

// Export records older than the spawn by more than this belong to an earlier run.
constexpr std::int64_t kExportSlackMs = 50;

std::pair<std::string, std::string> split_id(const std::string& id)
{
    auto slash = id.find('/');
    return {id.substr(0, slash), slash == std::string::npos ? std::string() : id.substr(slash + 1)};
}

class DbDirectory final : public ServerDirectory {
public:
    explicit DbDirectory(std::shared_ptr<client::Database> db) : db_(std::move(db)) {}

    std::vector<db::ServerRecord> servers_on(const std::string& host) override
    {
        std::vector<db::ServerRecord> out;
        for (const auto& id : db_->get_server_list("*")) {
            try {
                auto rec = db_->get_server_info(id);
                if (iequals(rec.host, host))
                    out.push_back(std::move(rec));
            } catch (const DevFailed& e) {
                if (!e.has_reason(reason::ServerNotDefined)) // deleted between the two calls
                    throw;
            }
        }
        return out;
    }

    std::optional<db::DeviceRecord> admin_record(const std::string& server_id) override
    {
        try {
            return db_->import_device(db::admin_device_name(server_id));
        } catch (const DevFailed& e) {
            if (e.has_reason(reason::DeviceNotDefined))
                return std::nullopt;
            throw;
        }
    }

    bool ping(const std::string& server_id, const std::string& endpoint) override
    {
        try {
            client::ProxyOptions quick;
            quick.timeout = std::chrono::milliseconds(500);
            quick.connect_timeout = std::chrono::milliseconds(300);
            client::DeviceProxy p(endpoint + "/" + db::admin_device_name(server_id), quick);
            p.ping();
            return true;
        } catch (const DevFailed&) {
            return false;
        }
    }

    void request_exit(const std::string& server_id, const std::string& endpoint) override
    {
        client::ProxyOptions quick;
        quick.timeout = std::chrono::milliseconds(1000);
        client::DeviceProxy p(endpoint + "/" + db::admin_device_name(server_id), quick);
        p.command_inout("Kill");
    }

private:
    std::shared_ptr<client::Database> db_;
};

} // namespace

std::string_view to_string(Observed o)
{
    switch (o) {
    case Observed::Stopped: return "Stopped";
    case Observed::Starting: return "Starting";
    case Observed::Running: return "Running";
    case Observed::Crashed: return "Crashed";
    }
    return "Stopped";
}

std::optional<Observed> observed_from_string(std::string_view s)
{
    for (auto o : {Observed::Stopped, Observed::Starting, Observed::Running, Observed::Crashed})
        if (to_string(o) == s)
            return o;
    return std::nullopt;
}

std::shared_ptr<ServerDirectory> database_directory(std::shared_ptr<client::Database> db)
{
    return std::make_shared<DbDirectory>(std::move(db));
}

Supervisor::Supervisor(SupervisorConfig config, std::shared_ptr<ServerDirectory> directory, const Clock& clock)
    : config_(std::move(config)), directory_(std::move(directory)), clock_(clock)
{
    try {
        scan();
    } catch (const DevFailed& e) {
        log_warn(kTag, std::string("initial scan failed: ") + e.what());
    }
    thread_ = std::thread([this] { loop(); });
}

Supervisor::~Supervisor()
{
    {
        std::lock_guard l(wake_mutex_);
        stopping_ = true;
    }
    wake_.notify_all();
    if (thread_.joinable())
        thread_.join();
    std::lock_guard l(mutex_);
    for (auto& [_, e] : entries_)
        e.child.release();
}

void Supervisor::loop()
{
    auto next_full = clock_.now_ms() + config_.scan_period.count();
    std::unique_lock l(wake_mutex_);
    while (!stopping_) {
        wake_.wait_for(l, config_.child_poll, [this] { return stopping_; });
        if (stopping_)
            break;
        l.unlock();
        try {
            if (clock_.now_ms() >= next_full) {
                scan();
                next_full = clock_.now_ms() + config_.scan_period.count();
            } else {
                std::lock_guard s(scan_mutex_);
                check_children();
                check_exports(false);
            }
        } catch (const std::exception& e) {
            log_warn(kTag, std::string("scan failed: ") + e.what());
        }
        l.lock();
    }
}

void Supervisor::scan()
{
    std::lock_guard s(scan_mutex_);
    refresh_registrations();
    check_children();
    check_exports(true);
}

void Supervisor::refresh_registrations()
{
    auto records = directory_->servers_on(config_.host);
    std::lock_guard l(mutex_);
    std::map<std::string, const db::ServerRecord*> wanted;
    for (const auto& r : records)
        if (r.level >= 1)
            wanted[to_lower(r.server_id)] = &r;
    for (auto it = entries_.begin(); it != entries_.end();) {
        // an unregistered server we still run stays tracked until it exits
        if (!wanted.count(it->first) && !it->second.child.running())
            it = entries_.erase(it);
        else
            ++it;
    }
    for (const auto& [key, rec] : wanted) {
        auto& e = entries_[key];
        e.view.server_id = rec->server_id;
        e.view.level = rec->level;
    }
}

void Supervisor::check_children()
{
    std::lock_guard l(mutex_);
    const auto now = clock_.now_ms();
    for (auto& [_, e] : entries_) {
        if (!e.child.valid())
            continue;
        if (!e.child.running()) {
            e.view.last_exit_code = e.child.exit_code();
            e.view.pid = -1;
            const bool wanted = e.view.desired == Desired::Running;
            e.view.observed = wanted ? Observed::Crashed : Observed::Stopped;
            e.view.in_flight = false;
            if (wanted)
                log_warn(kTag, e.view.server_id + " exited unexpectedly with code " +
                                   std::to_string(e.view.last_exit_code.value_or(-1)));
            e.child = proc::Child();
            continue;
        }
        if (e.view.desired == Desired::Stopped && e.stop_deadline_ms && now >= e.stop_deadline_ms) {
            log_warn(kTag, e.view.server_id + " ignored SIGTERM, killing");
            e.child.signal(SIGKILL);
            e.stop_deadline_ms = 0;
        }
    }
}

void Supervisor::check_exports(bool full)
{
    // Query the directory without holding the lock.
    struct Probe {
        std::string key, id;
        bool ours;
        std::int64_t spawned_at;
    };
    std::vector<Probe> probes;
    {
        std::lock_guard l(mutex_);
        for (const auto& [key, e] : entries_) {
            const bool starting = e.child.valid() && e.view.observed == Observed::Starting;
            const bool external = !e.child.valid() && (full || e.external_stop);
            if (starting || external)
                probes.push_back({key, e.view.server_id, e.child.valid(), e.spawned_at_ms});
        }
    }
    for (const auto& p : probes) {
        std::optional<db::DeviceRecord> rec;
        try {
            rec = directory_->admin_record(p.id);
        } catch (const DevFailed& e) {
            log_warn(kTag, "cannot look up " + p.id + ": " + e.errors().front().description);
            continue;
        }
        const bool exported = rec && rec->exported && !rec->endpoint.empty();
        std::unique_lock l(mutex_);
        auto it = entries_.find(p.key);
        if (it == entries_.end())
            continue;
        auto& e = it->second;
        if (p.ours) {
            if (e.child.valid() && exported && rec->export_time_ms + kExportSlackMs >= p.spawned_at) {
                e.view.observed = Observed::Running;
                e.view.in_flight = false;
                log_info(kTag, e.view.server_id + " is running (pid " + std::to_string(e.view.pid) + ")");
            }
            continue;
        }
        if (e.child.valid())
            continue; // started by us meanwhile
        bool alive = false;
        if (exported) {
            const auto endpoint = rec->endpoint;
            l.unlock();
            alive = directory_->ping(p.id, endpoint);
            l.lock(); // entries are only erased under scan_mutex_, which we hold
        }
        if (alive) {
            if (e.view.observed != Observed::Running)
                log_info(kTag, e.view.server_id + " found running outside this starter");
            e.view.observed = Observed::Running;
            if (!e.external_stop && e.view.desired == Desired::Stopped && !e.view.in_flight)
                e.view.desired = Desired::Running;
        } else {
            if (e.view.observed == Observed::Running)
                e.view.observed = e.view.desired == Desired::Running ? Observed::Crashed : Observed::Stopped;
            if (e.external_stop) {
                e.external_stop = false;
                e.view.in_flight = false;
            }
        }
    }
}

Supervisor::Entry* Supervisor::find_locked(const std::string& server_id)
{
    auto it = entries_.find(to_lower(server_id));
    return it == entries_.end() ? nullptr : &it->second;
}

void Supervisor::start(const std::string& server_id)
{
    std::unique_lock l(mutex_);
    if (!find_locked(server_id)) {
        l.unlock();
        scan(); // registered since the last scan?
        l.lock();
    }
    auto* e = find_locked(server_id);
    if (!e)
        throw_dev_failed(reason::StarterUnknownServer,
                         "server " + server_id + " is not registered for host " + config_.host + " with level >= 1",
                         "Starter::DevStart");
    if (e->child.valid()) {
        if (e->view.desired == Desired::Stopped)
            throw_dev_failed(reason::StarterSpawnFailed, "server " + server_id + " is still shutting down",
                             "Starter::DevStart");
        return;
    }
    if (e->view.observed == Observed::Running) {
        e->view.desired = Desired::Running;
        return;
    }

    const auto [exec, instance] = split_id(e->view.server_id);
    std::optional<std::string> path;
    for (const auto& dir : config_.start_paths)
        if ((path = proc::find_executable(dir, exec)))
            break;
    if (!path)
        throw_dev_failed(reason::StarterSpawnFailed, "no executable " + exec + " in the start path",
                         "Starter::DevStart");

    proc::SpawnOptions opts;
    if (!config_.db_endpoint.empty())
        opts.env.push_back("TNG_HOST=" + config_.db_endpoint);
    if (!config_.log_dir.empty())
        opts.log_file = config_.log_dir + "/" + exec + "_" + instance + ".log";
    try {
        e->spawned_at_ms = clock_.now_ms();
        e->child = proc::Child(*path, {instance}, opts);
    } catch (const DevFailed& err) {
        throw err.appended(reason::StarterSpawnFailed, "cannot start " + server_id, "Starter::DevStart");
    }
    e->view.pid = e->child.pid();
    e->view.desired = Desired::Running;
    e->view.observed = Observed::Starting;
    e->view.in_flight = true;
    e->stop_deadline_ms = 0;
    log_info(kTag, "started " + e->view.server_id + " as pid " + std::to_string(e->view.pid));
}

void Supervisor::stop(const std::string& server_id)
{
    std::unique_lock l(mutex_);
    if (!find_locked(server_id)) {
        l.unlock();
        scan();
        l.lock();
    }
    auto* e = find_locked(server_id);
    if (!e)
        throw_dev_failed(reason::StarterUnknownServer,
                         "server " + server_id + " is not registered for host " + config_.host + " with level >= 1",
                         "Starter::DevStop");
    e->view.desired = Desired::Stopped;
    if (e->child.valid()) {
        if (!e->stop_deadline_ms) {
            e->child.signal(SIGTERM);
            e->stop_deadline_ms = clock_.now_ms() + config_.stop_grace.count();
            e->view.in_flight = true;
            log_info(kTag, "stopping " + e->view.server_id);
        }
        return;
    }
    if (e->view.observed == Observed::Running && !e->external_stop) {
        const auto id = e->view.server_id;
        l.unlock();
        auto rec = directory_->admin_record(id);
        if (rec && rec->exported) {
            try {
                directory_->request_exit(id, rec->endpoint);
            } catch (const DevFailed& err) {
                log_warn(kTag, "cannot ask " + id + " to exit: " + err.errors().front().description);
            }
        }
        l.lock();
        if ((e = find_locked(id))) {
            e->external_stop = true;
            e->view.in_flight = true;
        }
        return;
    }
    if (e->view.observed == Observed::Crashed)
        e->view.observed = Observed::Stopped;
}

std::vector<ServerView> Supervisor::views() const
{
    std::lock_guard l(mutex_);
    std::vector<ServerView> out;
    for (const auto& [_, e] : entries_)
        out.push_back(e.view);
    return out;
}

std::vector<std::string> Supervisor::running_servers() const
{
    std::vector<std::string> out;
    for (const auto& v : views())
        if (v.observed == Observed::Running)
            out.push_back(v.server_id);
    return out;
}

std::vector<std::string> Supervisor::stopped_servers() const
{
    std::vector<std::string> out;
    for (const auto& v : views())
        if (v.observed != Observed::Running)
            out.push_back(v.server_id);
    return out;
}

DeviceState Supervisor::state() const
{
    bool moving = false, alarm = false;
    for (const auto& v : views()) {
        moving = moving || v.in_flight;
        alarm = alarm || (v.desired == Desired::Running &&
                          (v.observed == Observed::Crashed || v.observed == Observed::Stopped));
    }
    return moving ? DeviceState::MOVING : alarm ? DeviceState::ALARM : DeviceState::ON;
}

void Supervisor::kill_children()
{
    std::lock_guard l(mutex_);
    for (auto& [_, e] : entries_)
        if (e.child.valid()) {
            e.view.desired = Desired::Stopped;
            e.child.stop(std::chrono::milliseconds(2000));
        }
}

} // namespace tng::starter
