#pragma once

#include "tng/client/database.hpp"

#include <json.hpp>

namespace tng::astor {

struct ServerRow {
    std::string server_id;
    std::uint32_t level = 0;
    // Starter's view for level >= 1 ("Running", "Stopped", "Starting",
    // "Crashed", or "UNKNOWN" when the Starter cannot be asked). Level 0
    // servers are not supervised; their row reflects the database export flag.
    std::string observed;
    std::size_t devices = 0;
    bool operator==(const ServerRow&) const = default;
};

struct HostView {
    std::string host;
    std::string starter_state; // device state name, or "UNKNOWN"
    std::vector<ServerRow> servers;
    bool operator==(const HostView&) const = default;
};

struct FleetView {
    std::vector<HostView> hosts;
    bool empty() const { return hosts.empty(); }
    bool operator==(const FleetView&) const = default;
};

nlohmann::json to_json(const FleetView& v);
FleetView fleet_from_json(const nlohmann::json& j);
std::string render_table(const FleetView& v);

enum class Action { Start, Stop };

struct ActionResult {
    std::string server_id;
    std::uint32_t level = 0;
    Action action = Action::Start;
    bool ok = false;
    std::string reason; // empty on success
    std::string message;
    std::int64_t issued_ms = 0;    // wall clock, when the Starter accepted the request
    std::int64_t confirmed_ms = 0; // when the Starter reported the target state
};

struct RunReport {
    std::vector<ActionResult> results; // in issue order
    bool ok() const;
    std::size_t failures() const;
};

nlohmann::json to_json(const RunReport& r);
std::string render_report(const RunReport& r);

struct FleetOptions {
    std::chrono::milliseconds server_timeout{30'000};
    std::size_t workers = 8;
    std::chrono::milliseconds poll{100};
    std::chrono::milliseconds call_timeout{5'000};
};

// Fleet-wide operations built only from database queries and calls on the
// Starter devices ("tango/admin/<host>").
class Fleet {
public:
    explicit Fleet(std::shared_ptr<client::Database> db, FleetOptions options = {});

    /// Throws DB_UNREACHABLE; a dead Starter shows up as UNKNOWN rows.
    FleetView status();

    /// Levels ascending, concurrent within a level, a barrier between levels.
    /// Failures and timeouts are recorded and the run carries on.
    RunReport start_all();
    /// The same, levels descending.
    RunReport stop_all();

    /// One server, waiting for the target state. Throws UNKNOWN_SERVER and
    /// STARTER_UNREACHABLE; other failures come back in the result.
    ActionResult start(const std::string& server_id);
    ActionResult stop(const std::string& server_id);
    /// Hands the request to the Starter and returns without waiting.
    void issue(const std::string& server_id, Action a);

private:
    struct Target {
        std::string server_id;
        std::string host;
        std::uint32_t level = 0;
    };
    std::vector<Target> targets();
    Target lookup(const std::string& server_id);
    ActionResult act(const Target& t, Action a);
    RunReport run(Action a);

    std::shared_ptr<client::Database> db_;
    FleetOptions options_;
};

} // namespace tng::astor
