#pragma once

#include "tng/server/device_server.hpp"

#include <chrono>

namespace tng::client {
class Database;
}

namespace tng::server {

struct ServerConfig {
    std::string exec_name;
    std::string instance;
    std::optional<net::Endpoint> db; // unset: TNG_HOST
    std::uint16_t port = 0;          // 0: ephemeral
    std::string bind_host = "0.0.0.0";
    std::string advertised_host; // empty: this machine's hostname
    std::string port_file;       // written once listening
    int db_attempts = 5;
    std::chrono::milliseconds db_backoff{200};
    bool remote_kill = false;    // admin Kill raises SIGTERM in this process
    bool fault_commands = false; // admin FaultInject allowed

    std::string server_id() const { return exec_name + "/" + instance; }
};

// The database-driven startup and shutdown sequence around a DeviceServer:
// connect DB, list devices per class, init each, listen, export, restore polling.
class ServerRuntime {
public:
    ServerRuntime(ServerConfig config, std::vector<std::shared_ptr<DeviceClass>> classes);
    ~ServerRuntime();

    /// Throws DB_UNREACHABLE or SERVER_NOT_REGISTERED.
    void start();
    /// Unexports, then deletes devices in reverse creation order. Idempotent.
    void stop();

    DeviceServer& server() noexcept { return *server_; }
    const ServerConfig& config() const noexcept { return config_; }
    /// "host:port" as exported.
    std::string endpoint() const;

private:
    void connect_database();

    ServerConfig config_;
    std::vector<std::shared_ptr<DeviceClass>> classes_;
    std::shared_ptr<client::Database> db_;
    std::unique_ptr<DeviceServer> server_;
    bool started_ = false;
    bool stopped_ = false;
};

/// Process entry point: `<exec> <instance> [--port N] [--db host:port] [--host H] [--port-file F]`.
/// Runs until SIGINT/SIGTERM. Exit codes: 0 clean, 1 other failure, 2 SERVER_NOT_REGISTERED, 3 DB_UNREACHABLE.
int server_main(int argc, char** argv, std::vector<std::shared_ptr<DeviceClass>> classes);

/// Writes text to path through a temporary file and rename.
void write_file_atomically(const std::string& path, const std::string& text);

} // namespace tng::server
