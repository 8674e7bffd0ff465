#include "tng/server/runtime.hpp"

#include "tng/client/database.hpp"
#include "tng/core/log.hpp"
#include "tng/core/reasons.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>
#include <unistd.h>

namespace tng::server {

namespace {

constexpr const char* kTag = "runtime";

} // namespace

void write_file_atomically(const std::string& path, const std::string& text)
{
    const auto tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw_dev_failed(reason::IoFailure, "cannot write " + tmp, "write_file_atomically");
        out << text;
        out.flush();
        if (!out)
            throw_dev_failed(reason::IoFailure, "cannot write " + tmp, "write_file_atomically");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw_dev_failed(reason::IoFailure, "cannot rename " + tmp + ": " + ec.message(), "write_file_atomically");
}

ServerRuntime::ServerRuntime(ServerConfig config, std::vector<std::shared_ptr<DeviceClass>> classes)
    : config_(std::move(config)), classes_(std::move(classes))
{
    if (config_.advertised_host.empty())
        config_.advertised_host = net::local_hostname();
}

ServerRuntime::~ServerRuntime()
{
    stop();
}

std::string ServerRuntime::endpoint() const
{
    return config_.advertised_host + ":" + std::to_string(server_ ? server_->port() : 0);
}

void ServerRuntime::connect_database()
{
    if (!config_.db) {
        const char* host = std::getenv("TNG_HOST");
        if (!host || !*host)
            throw_dev_failed(reason::DbUnreachable, "neither --db nor TNG_HOST is set", "ServerRuntime");
        try {
            config_.db = net::Endpoint::parse(host);
        } catch (const DevFailed& e) {
            throw e.appended(reason::DbUnreachable, "TNG_HOST is not host:port", "ServerRuntime");
        }
    }
    client::ProxyOptions opts;
    opts.connect_timeout = std::chrono::milliseconds(1000);
    opts.timeout = std::chrono::milliseconds(5000);
    db_ = std::make_shared<client::Database>(*config_.db, opts);
    auto delay = config_.db_backoff;
    for (int attempt = 1;; ++attempt) {
        try {
            db_->proxy().ping();
            return;
        } catch (const DevFailed& e) {
            if (attempt >= config_.db_attempts)
                throw e.appended(reason::DbUnreachable,
                                 "database " + config_.db->str() + " unreachable after " + std::to_string(attempt) +
                                     " attempts",
                                 "ServerRuntime");
            log_warn(kTag, "database " + config_.db->str() + " not reachable, retrying in " +
                               std::to_string(delay.count()) + " ms");
            std::this_thread::sleep_for(delay);
            delay = std::min(delay * 2, std::chrono::milliseconds(5000));
        }
    }
}

void ServerRuntime::start()
{
    stopped_ = false;
    const auto id = config_.server_id();
    connect_database();

    db::ServerRecord record;
    try {
        record = db_->get_server_info(id);
    } catch (const DevFailed& e) {
        if (e.has_reason(reason::ServerNotDefined))
            throw e.appended(reason::ServerNotRegistered, "server " + id + " is not registered in the database",
                             "ServerRuntime");
        throw;
    }

    server_ = std::make_unique<DeviceServer>(id, std::make_shared<DatabasePropertyStore>(db_));
    server_->set_database(db_);
    if (config_.remote_kill)
        server_->set_kill_handler([] {
            // let the reply leave before the signal lands
            std::thread([] {
                std::this_thread::sleep_for(std::chrono::milliseconds(20));
                ::kill(::getpid(), SIGTERM);
            }).detach();
        });
    server_->enable_fault_commands(config_.fault_commands);
    for (const auto& c : classes_)
        server_->register_class(c);
    server_->add_admin_device();

    for (const auto& cls : classes_) {
        for (const auto& name : db_->get_device_list(id, cls->name())) {
            auto& dev = server_->add_device(*cls, name);
            log_info(kTag, cls->name() + " device " + dev.name().str() + " created, state " +
                               std::string(to_string(dev.get_state())));
        }
    }
    for (const auto& b : record.classes) {
        const bool known = iequals(b.class_name, db::kAdminClass) || server_->find_class(b.class_name);
        if (!known)
            log_warn(kTag, "class " + b.class_name + " is registered for " + id + " but not built into this server");
    }

    server_->listen(config_.bind_host, config_.port);
    const auto ep = endpoint();
    for (const auto& name : server_->device_names()) {
        try {
            db_->export_device(name.str(), ep, id);
        } catch (const DevFailed& e) {
            if (name.str() == db::admin_device_name(id) && e.has_reason(reason::DeviceNotDefined))
                continue;
            throw;
        }
    }
    started_ = true;
    server_->restore_polling();
    if (!config_.port_file.empty())
        write_file_atomically(config_.port_file, std::to_string(server_->port()) + "\n");
    log_info(kTag, id + " serving " + std::to_string(server_->device_names().size()) + " devices on " + ep);
}

void ServerRuntime::stop()
{
    if (!server_ || stopped_)
        return;
    stopped_ = true;
    if (started_) {
        started_ = false;
        try {
            db_->unexport_server(config_.server_id());
        } catch (const DevFailed& e) {
            log_warn(kTag, std::string("unexport failed: ") + e.what());
        }
    }
    server_->shutdown();
    log_info(kTag, config_.server_id() + " stopped");
}

int server_main(int argc, char** argv, std::vector<std::shared_ptr<DeviceClass>> classes)
{
    ServerConfig cfg;
    cfg.exec_name = std::filesystem::path(argv[0]).filename().string();
    cfg.remote_kill = true;
    if (const char* f = std::getenv("TNG_FAULT_INJECTION"))
        cfg.fault_commands = std::string_view(f) == "1";
    CLI::App app{cfg.exec_name + " device server"};
    std::string db;
    app.add_option("instance", cfg.instance, "Instance name")->required();
    app.add_option("--port", cfg.port, "Listening port (0: ephemeral)");
    app.add_option("--db", db, "Database endpoint host:port (default: TNG_HOST)");
    app.add_option("--host", cfg.advertised_host, "Host name exported for clients");
    app.add_option("--port-file", cfg.port_file, "Write the listening port to this file");
    app.add_option("--db-attempts", cfg.db_attempts, "Database connection attempts")->check(CLI::PositiveNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    // Block the stop signals in every thread; the main thread collects them.
    sigset_t stop_signals;
    sigemptyset(&stop_signals);
    sigaddset(&stop_signals, SIGINT);
    sigaddset(&stop_signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);
    std::signal(SIGPIPE, SIG_IGN);

    try {
        if (!db.empty())
            cfg.db = net::Endpoint::parse(db);
        ServerRuntime runtime(cfg, std::move(classes));
        runtime.start();
        int sig = 0;
        sigwait(&stop_signals, &sig);
        log_info("runtime", std::string("signal ") + std::to_string(sig) + " received, shutting down");
        runtime.stop();
        return 0;
    } catch (const DevFailed& e) {
        log_error("runtime", e.what());
        if (e.has_reason(reason::ServerNotRegistered))
            return 2;
        if (e.has_reason(reason::DbUnreachable))
            return 3;
        return 1;
    }
}

} // namespace tng::server
