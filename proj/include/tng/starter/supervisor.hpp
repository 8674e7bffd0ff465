#pragma once

#include "tng/core/clock.hpp"
#include "tng/core/types.hpp"
#include "tng/db/records.hpp"
#include "tng/proc/process.hpp"

#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

namespace tng::client {
class Database;
}

namespace tng::starter {

enum class Desired : std::uint8_t { Stopped, Running };
enum class Observed : std::uint8_t { Stopped, Starting, Running, Crashed };

std::string_view to_string(Observed o);
std::optional<Observed> observed_from_string(std::string_view s);

struct ServerView {
    std::string server_id;
    std::uint32_t level = 0;
    Desired desired = Desired::Stopped;
    Observed observed = Observed::Stopped;
    bool in_flight = false; // a start or stop has been issued and not yet observed
    pid_t pid = -1;         // our child, -1 when not started by us
    std::optional<int> last_exit_code;
};

// What the supervisor needs from the database. Split out so tests can fake it.
class ServerDirectory {
public:
    virtual ~ServerDirectory() = default;
    /// Servers registered for `host`, any level.
    virtual std::vector<db::ServerRecord> servers_on(const std::string& host) = 0;
    /// Export record of the server's admin device; nullopt when undefined.
    virtual std::optional<db::DeviceRecord> admin_record(const std::string& server_id) = 0;
    /// True when the admin device at `endpoint` answers.
    virtual bool ping(const std::string& server_id, const std::string& endpoint) = 0;
    /// Asks a server we did not start to exit.
    virtual void request_exit(const std::string& server_id, const std::string& endpoint) = 0;
};

std::shared_ptr<ServerDirectory> database_directory(std::shared_ptr<client::Database> db);

struct SupervisorConfig {
    std::string host;
    std::vector<std::string> start_paths;
    std::string log_dir;
    /// Passed to children as TNG_HOST.
    std::string db_endpoint;
    std::chrono::milliseconds scan_period{2000};
    std::chrono::milliseconds child_poll{50};
    std::chrono::milliseconds stop_grace{5000};
};

// Starts, stops and watches the level >= 1 servers registered for one host.
// Liveness comes from our own children first and from DB export plus a ping for
// servers started some other way. Crashed servers are reported, never restarted.
class Supervisor {
public:
    Supervisor(SupervisorConfig config, std::shared_ptr<ServerDirectory> directory,
               const Clock& clock = SystemClock::instance());
    /// Leaves running children alone; they outlive the supervisor.
    ~Supervisor();

    Supervisor(const Supervisor&) = delete;
    Supervisor& operator=(const Supervisor&) = delete;

    /// Throws STARTER_UnknownServer or STARTER_SpawnFailed. No-op when already running.
    void start(const std::string& server_id);
    /// Throws STARTER_UnknownServer. No-op when already stopped.
    void stop(const std::string& server_id);

    std::vector<std::string> running_servers() const;
    std::vector<std::string> stopped_servers() const;
    std::vector<ServerView> views() const;
    /// ON, ALARM (a wanted server is down) or MOVING (a start or stop in flight).
    DeviceState state() const;

    /// Re-reads the registration list and re-checks liveness now.
    void scan();
    /// Kills every child we started. Used on test teardown.
    void kill_children();

    const SupervisorConfig& config() const noexcept { return config_; }

private:
    struct Entry {
        ServerView view;
        proc::Child child;
        std::int64_t spawned_at_ms = 0;
        std::int64_t stop_deadline_ms = 0;
        bool external_stop = false;
    };

    void refresh_registrations();
    void check_children();
    void check_exports(bool full);
    void loop();
    Entry* find_locked(const std::string& server_id);

    SupervisorConfig config_;
    std::shared_ptr<ServerDirectory> directory_;
    const Clock& clock_;

    mutable std::mutex mutex_;
    std::map<std::string, Entry> entries_; // lowercase id
    std::mutex scan_mutex_;                // one scan at a time

    std::mutex wake_mutex_;
    std::condition_variable wake_;
    bool stopping_ = false;
    std::thread thread_;
};

} // namespace tng::starter
