// DataBaseds: the configuration/naming database served as device sys/database/2.

#include "tng/core/log.hpp"
#include "tng/core/reasons.hpp"
#include "tng/db/database_device.hpp"
#include "tng/server/device_server.hpp"
#include "tng/server/runtime.hpp"

#include <CLI11.hpp>

#include <csignal>

using namespace tng;

int main(int argc, char** argv)
{
    std::string instance = "2";
    std::uint16_t port = 10000;
    std::string file = "tng_database.txt";
    std::string host;
    std::string port_file;

    CLI::App app{"Configuration and naming database"};
    app.add_option("instance", instance, "Instance name (the database device is sys/database/2)");
    app.add_option("--port", port, "Listening port (0: ephemeral)");
    app.add_option("--file", file, "Data file, rewritten atomically on every change");
    app.add_option("--host", host, "Host name exported for clients");
    app.add_option("--port-file", port_file, "Write the listening port to this file");
    CLI11_PARSE(app, argc, argv);

    sigset_t stop_signals;
    sigemptyset(&stop_signals);
    sigaddset(&stop_signals, SIGINT);
    sigaddset(&stop_signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);
    std::signal(SIGPIPE, SIG_IGN);

    try {
        auto store = std::make_shared<db::DatabaseStore>(file);
        store->load();

        server::DeviceServer srv(db::kDatabaseServer);
        auto cls = db::make_database_class(store);
        srv.register_class(cls);
        srv.add_admin_device();
        srv.add_device(*cls, db::kDatabaseDevice);
        srv.listen("0.0.0.0", port);

        if (host.empty())
            host = net::local_hostname();
        const auto ep = host + ":" + std::to_string(srv.port());
        for (const auto& n : srv.device_names())
            store->export_device(n.str(), ep, db::kDatabaseServer);
        if (!port_file.empty())
            server::write_file_atomically(port_file, std::to_string(srv.port()) + "\n");
        log_info("databaseds", "database serving " + file + " on " + ep);

        int sig = 0;
        sigwait(&stop_signals, &sig);
        store->unexport_server(db::kDatabaseServer);
        srv.shutdown();
        return 0;
    } catch (const DevFailed& e) {
        log_error("databaseds", e.what());
        return e.has_reason(reason::CorruptFile) ? 4 : 1;
    }
}
