#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <sys/types.h>
#include <vector>

namespace tng::proc {

struct SpawnOptions {
    /// Extra NAME=value entries layered over the current environment.
    std::vector<std::string> env;
    /// stdout and stderr are appended here; empty keeps the parent's.
    std::string log_file;
    /// Put the child in its own process group so signals to the parent's group miss it.
    bool new_process_group = true;
};

// One child process. Destruction kills and reaps a still-running child.
class Child {
public:
    Child() = default;
    /// Throws IO_FAILURE when the executable cannot be started.
    Child(const std::string& path, const std::vector<std::string>& args, const SpawnOptions& opts = {});
    ~Child();

    Child(Child&& other) noexcept;
    Child& operator=(Child&& other) noexcept;
    Child(const Child&) = delete;
    Child& operator=(const Child&) = delete;

    pid_t pid() const noexcept { return pid_; }
    bool valid() const noexcept { return pid_ > 0; }

    /// Non-blocking reap. True while the process exists.
    bool running();
    std::optional<int> exit_code() const noexcept { return exit_code_; }
    /// Raw wait status once reaped.
    std::optional<int> wait_status() const noexcept { return status_; }

    /// Waits up to `timeout`; returns true once reaped.
    bool wait_for(std::chrono::milliseconds timeout);
    void signal(int sig);
    /// SIGTERM, then SIGKILL after `grace`. Always reaps.
    void stop(std::chrono::milliseconds grace = std::chrono::seconds(5));
    /// Forgets the child without touching it; it keeps running.
    void release() noexcept;

private:
    void reaped(int status);

    pid_t pid_ = -1;
    std::optional<int> status_;
    std::optional<int> exit_code_;
};

/// Absolute path of `name` in `dir`, or nullopt when missing or not executable.
std::optional<std::string> find_executable(const std::string& dir, const std::string& name);

/// Directory holding the running executable.
std::string self_dir();

} // namespace tng::proc
