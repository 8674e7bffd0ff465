#include "tng/net/socket.hpp"

#include "tng/core/errors.hpp"
#include "tng/core/reasons.hpp"

#include <arpa/inet.h>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <fstream>
#include <mutex>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

namespace tng::net {

namespace {

// TNG_CONNECT_TRACE=<file>: append every outgoing connection target, one per line.
void trace_connect(const Endpoint& ep)
{
    static const char* path = std::getenv("TNG_CONNECT_TRACE");
    if (!path || !*path)
        return;
    static std::mutex m;
    std::lock_guard l(m);
    std::ofstream(path, std::ios::app) << ep.str() << '\n';
}

[[noreturn]] void io_fail(const std::string& what, int err)
{
    throw_dev_failed(reason::IoFailure, what + ": " + std::strerror(err), "net");
}

sockaddr_in resolve(const std::string& host, std::uint16_t port)
{
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    const std::string h = (host.empty() || host == "localhost") ? "127.0.0.1" : host;
    if (::inet_pton(AF_INET, h.c_str(), &addr.sin_addr) == 1)
        return addr;
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    if (::getaddrinfo(h.c_str(), nullptr, &hints, &res) != 0 || res == nullptr)
        throw_dev_failed(reason::IoFailure, "cannot resolve host '" + host + "'", "net");
    addr.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
    ::freeaddrinfo(res);
    return addr;
}

} // namespace

Endpoint Endpoint::parse(std::string_view text)
{
    auto colon = text.rfind(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size())
        throw_dev_failed(reason::MalformedArgument, "'" + std::string(text) + "' is not host:port", "Endpoint::parse");
    unsigned long port = 0;
    for (char c : text.substr(colon + 1)) {
        if (c < '0' || c > '9')
            throw_dev_failed(reason::MalformedArgument, "bad port in '" + std::string(text) + "'", "Endpoint::parse");
        port = port * 10 + static_cast<unsigned long>(c - '0');
        if (port > 65535)
            throw_dev_failed(reason::MalformedArgument, "port out of range in '" + std::string(text) + "'",
                             "Endpoint::parse");
    }
    return Endpoint{std::string(text.substr(0, colon)), static_cast<std::uint16_t>(port)};
}

Socket& Socket::operator=(Socket&& o) noexcept
{
    if (this != &o) {
        close();
        fd_ = o.fd_;
        o.fd_ = -1;
    }
    return *this;
}

Socket Socket::connect(const Endpoint& ep, std::chrono::milliseconds timeout)
{
    trace_connect(ep);
    auto addr = resolve(ep.host, ep.port);
    int fd = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
    if (fd < 0)
        io_fail("socket", errno);
    Socket s(fd);
    int flags = ::fcntl(fd, F_GETFL, 0);
    ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
    int rc = ::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr));
    if (rc != 0 && errno != EINPROGRESS)
        io_fail("connect to " + ep.str(), errno);
    if (rc != 0) {
        pollfd p{fd, POLLOUT, 0};
        rc = ::poll(&p, 1, static_cast<int>(timeout.count()));
        if (rc == 0)
            throw_dev_failed(reason::IoFailure, "connect to " + ep.str() + " timed out", "net");
        int err = 0;
        socklen_t len = sizeof(err);
        ::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len);
        if (err != 0)
            io_fail("connect to " + ep.str(), err);
    }
    ::fcntl(fd, F_SETFL, flags);
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    return s;
}

std::size_t Socket::read_some(std::span<std::uint8_t> buf)
{
    for (;;) {
        auto n = ::recv(fd_, buf.data(), buf.size(), 0);
        if (n >= 0)
            return static_cast<std::size_t>(n);
        if (errno == EINTR)
            continue;
        if (errno == ECONNRESET || errno == EBADF || errno == ENOTCONN)
            return 0;
        io_fail("recv", errno);
    }
}

void Socket::write_all(std::span<const std::uint8_t> buf)
{
    std::size_t sent = 0;
    while (sent < buf.size()) {
        auto n = ::send(fd_, buf.data() + sent, buf.size() - sent, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            io_fail("send", errno);
        }
        sent += static_cast<std::size_t>(n);
    }
}

void Socket::shutdown() noexcept
{
    if (fd_ >= 0)
        ::shutdown(fd_, SHUT_RDWR);
}

void Socket::close() noexcept
{
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

Listener::Listener(Listener&& o) noexcept : fd_(o.fd_), port_(o.port_) { o.fd_ = -1; }

Listener& Listener::operator=(Listener&& o) noexcept
{
    if (this != &o) {
        if (fd_ >= 0)
            ::close(fd_);
        fd_ = o.fd_;
        port_ = o.port_;
        o.fd_ = -1;
    }
    return *this;
}

Listener::~Listener()
{
    if (fd_ >= 0)
        ::close(fd_);
}

Listener Listener::bind(const std::string& host, std::uint16_t port)
{
    auto addr = resolve(host.empty() ? "0.0.0.0" : host, port);
    int fd = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
    if (fd < 0)
        io_fail("socket", errno);
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        int err = errno;
        ::close(fd);
        io_fail("bind " + host + ":" + std::to_string(port), err);
    }
    if (::listen(fd, 128) != 0) {
        int err = errno;
        ::close(fd);
        io_fail("listen", err);
    }
    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    ::getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &len);
    Listener l;
    l.fd_ = fd;
    l.port_ = ntohs(bound.sin_port);
    return l;
}

Socket Listener::accept()
{
    for (;;) {
        int fd = ::accept4(fd_, nullptr, nullptr, SOCK_CLOEXEC);
        if (fd >= 0) {
            int one = 1;
            ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
            return Socket(fd);
        }
        if (errno == EINTR || errno == ECONNABORTED)
            continue;
        return Socket();
    }
}

void Listener::shutdown() noexcept
{
    if (fd_ >= 0)
        ::shutdown(fd_, SHUT_RDWR);
}

std::string local_hostname()
{
    char buf[256] = {};
    if (::gethostname(buf, sizeof(buf) - 1) != 0)
        return "localhost";
    return buf;
}

} // namespace tng::net
