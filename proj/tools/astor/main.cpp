// astor: fleet status and level-ordered start/stop through the Starters.
//
//   astor status | start-all | stop-all | start <id> | stop <id>
//         [--db host:port] [--timeout-s N] [--json]

#include "tng/astor/fleet.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace tng;

int main(int argc, char** argv)
{
    CLI::App app{"Control-system fleet operations"};
    app.require_subcommand(1);
    std::string db_endpoint;
    double timeout_s = 30;
    bool json = false;
    app.add_option("--db", db_endpoint, "Database endpoint host:port (default: TNG_HOST)");
    app.add_option("--timeout-s", timeout_s, "Per-server start/stop timeout")->check(CLI::PositiveNumber);
    app.add_flag("--json", json, "Machine-readable output");

    std::string server_id;
    auto* status = app.add_subcommand("status", "Servers per host as the Starters see them");
    auto* start_all = app.add_subcommand("start-all", "Start every level >= 1 server, lowest level first");
    auto* stop_all = app.add_subcommand("stop-all", "Stop every level >= 1 server, highest level first");
    auto* start = app.add_subcommand("start", "Start one server");
    start->add_option("server", server_id, "Server id Exec/instance")->required();
    auto* stop = app.add_subcommand("stop", "Stop one server");
    stop->add_option("server", server_id, "Server id Exec/instance")->required();
    for (auto* sub : {status, start_all, stop_all, start, stop})
        sub->fallthrough(); // global flags may follow the subcommand

    CLI11_PARSE(app, argc, argv);

    try {
        auto db = db_endpoint.empty() ? client::Database::from_env()
                                      : std::make_shared<client::Database>(net::Endpoint::parse(db_endpoint));
        astor::FleetOptions opts;
        opts.server_timeout = std::chrono::milliseconds(static_cast<std::int64_t>(timeout_s * 1000));
        astor::Fleet fleet(db, opts);

        if (status->parsed()) {
            auto view = fleet.status();
            std::cout << (json ? astor::to_json(view).dump(2) + "\n" : astor::render_table(view));
            return 0;
        }
        astor::RunReport report;
        if (start_all->parsed())
            report = fleet.start_all();
        else if (stop_all->parsed())
            report = fleet.stop_all();
        else
            report.results.push_back(start->parsed() ? fleet.start(server_id) : fleet.stop(server_id));
        std::cout << (json ? astor::to_json(report).dump(2) + "\n" : astor::render_report(report));
        return report.ok() ? 0 : 1;
    } catch (const DevFailed& e) {
        if (json)
            std::cout << nlohmann::json{{"ok", false}, {"reason", e.outer_reason()},
                                        {"message", e.errors().back().description}}
                             .dump(2)
                      << "\n";
        std::cerr << "astor: " << e.outer_reason() << ": " << e.errors().back().description << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "astor: " << e.what() << "\n";
        return 1;
    }
}
