#pragma once

#include "tng/wire/framing.hpp"

#include <chrono>
#include <cstdint>
#include <string>

namespace tng::net {

struct Endpoint {
    std::string host;
    std::uint16_t port = 0;

    std::string str() const { return host + ":" + std::to_string(port); }
    /// "host:port"; throws MALFORMED_ARGUMENT.
    static Endpoint parse(std::string_view text);
    bool operator==(const Endpoint&) const = default;
};

// Connected TCP stream. Move-only; closes on destruction.
class Socket final : public wire::ByteStream {
public:
    Socket() = default;
    explicit Socket(int fd) : fd_(fd) {}
    Socket(Socket&& o) noexcept : fd_(o.fd_) { o.fd_ = -1; }
    Socket& operator=(Socket&& o) noexcept;
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;
    ~Socket() override { close(); }

    /// Throws IO_FAILURE on refusal or timeout.
    static Socket connect(const Endpoint& ep, std::chrono::milliseconds timeout);

    std::size_t read_some(std::span<std::uint8_t> buf) override;
    void write_all(std::span<const std::uint8_t> buf) override;

    /// Unblocks concurrent readers/writers without releasing the descriptor.
    void shutdown() noexcept;
    void close() noexcept;
    bool valid() const noexcept { return fd_ >= 0; }
    int fd() const noexcept { return fd_; }

private:
    int fd_ = -1;
};

class Listener {
public:
    Listener() = default;
    Listener(Listener&&) noexcept;
    Listener& operator=(Listener&&) noexcept;
    ~Listener();

    /// Port 0 picks an ephemeral port.
    static Listener bind(const std::string& host, std::uint16_t port);

    /// Blocks; returns an invalid Socket once the listener has been shut down.
    Socket accept();
    void shutdown() noexcept;
    std::uint16_t port() const noexcept { return port_; }

private:
    int fd_ = -1;
    std::uint16_t port_ = 0;
};

std::string local_hostname();

} // namespace tng::net
