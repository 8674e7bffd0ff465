#pragma once

#include "tng/client/database.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

namespace tng::gateway {

// Shared proxies keyed by device name. Entries idle longer than `idle` are
// dropped on the next acquire or sweep; reconnection stays in the proxy.
class ProxyPool {
public:
    using Clock = std::chrono::steady_clock;

    ProxyPool(std::shared_ptr<client::Database> db, client::ProxyOptions options,
              std::chrono::milliseconds idle = std::chrono::minutes(5));

    std::shared_ptr<client::DeviceProxy> acquire(const std::string& device, Clock::time_point now = Clock::now());
    std::size_t sweep(Clock::time_point now = Clock::now());
    std::size_t size() const;

private:
    struct Entry {
        std::shared_ptr<client::DeviceProxy> proxy;
        Clock::time_point last_used;
    };
    std::shared_ptr<client::Database> db_;
    client::ProxyOptions options_;
    std::chrono::milliseconds idle_;
    mutable std::mutex mutex_;
    std::map<std::string, Entry> entries_;
};

enum class Route { Device, Database, Servers };

/// HTTP status for a failed call on the given route family.
int http_status(const DevFailed& e, Route route);

struct GatewayOptions {
    std::string static_dir; // served at "/" when set
    std::chrono::milliseconds idle_eviction = std::chrono::minutes(5);
    client::ProxyOptions proxy{};
    std::chrono::milliseconds server_action_timeout{30'000};
};

// REST front for the device, database and fleet operations under /api/v1.
class Gateway {
public:
    Gateway(std::shared_ptr<client::Database> db, GatewayOptions options = {});
    ~Gateway();

    /// Binds (port 0: ephemeral) and serves on a background thread.
    std::uint16_t start(const std::string& host, std::uint16_t port);
    /// Blocks serving on the calling thread.
    void serve(const std::string& host, std::uint16_t port);
    void stop();

    ProxyPool& pool() { return pool_; }

private:
    class Impl;
    std::shared_ptr<client::Database> db_;
    GatewayOptions options_;
    ProxyPool pool_;
    std::unique_ptr<Impl> impl_;
    std::thread thread_;
};

/// The OpenAPI description served at /api/v1/spec.
const char* openapi_document();

} // namespace tng::gateway
