// gateway: REST/JSON front for devices, the database and the fleet.
//
//   gateway --listen host:port --db host:port [--static dir] [--port-file f]

#include "tng/gateway/gateway.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>

using namespace tng;

int main(int argc, char** argv)
{
    CLI::App app{"HTTP gateway"};
    std::string listen = "0.0.0.0:8080";
    std::string db_endpoint;
    std::string port_file;
    gateway::GatewayOptions opts;
    app.add_option("--listen", listen, "host:port to serve on (port 0: ephemeral)");
    app.add_option("--db", db_endpoint, "Database endpoint host:port (default: TNG_HOST)");
    app.add_option("--static", opts.static_dir, "Directory served at /")->check(CLI::ExistingDirectory);
    app.add_option("--port-file", port_file, "Write the bound port here");
    CLI11_PARSE(app, argc, argv);

    // block before any thread exists so every thread inherits the mask
    sigset_t stop_signals;
    sigemptyset(&stop_signals);
    sigaddset(&stop_signals, SIGTERM);
    sigaddset(&stop_signals, SIGINT);
    pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

    try {
        auto ep = net::Endpoint::parse(listen);
        auto db = db_endpoint.empty() ? client::Database::from_env()
                                      : std::make_shared<client::Database>(net::Endpoint::parse(db_endpoint));
        gateway::Gateway gw(db, opts);
        const auto port = gw.start(ep.host, ep.port);
        if (!port_file.empty()) {
            std::ofstream(port_file + ".tmp") << port << "\n";
            std::rename((port_file + ".tmp").c_str(), port_file.c_str());
        }
        int sig = 0;
        sigwait(&stop_signals, &sig);
        gw.stop();
        return 0;
    } catch (const DevFailed& e) {
        std::cerr << "gateway: " << e.outer_reason() << ": " << e.errors().back().description << "\n";
        return 1;
    }
}
