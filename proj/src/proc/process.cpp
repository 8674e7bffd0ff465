#include "tng/proc/process.hpp"

#include "tng/core/errors.hpp"
#include "tng/core/reasons.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <filesystem>
#include <spawn.h>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

extern char** environ;

namespace tng::proc {

Child::Child(const std::string& path, const std::vector<std::string>& args, const SpawnOptions& opts)
{
    std::vector<std::string> argv_s;
    argv_s.push_back(path);
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_s)
        argv.push_back(a.data());
    argv.push_back(nullptr);

    // environment: ours, minus overridden names, plus the extras
    std::vector<std::string> env_s;
    for (char** e = environ; *e; ++e) {
        std::string_view entry(*e);
        bool overridden = false;
        for (const auto& x : opts.env) {
            auto key = x.substr(0, x.find('=') + 1);
            overridden = overridden || entry.substr(0, key.size()) == key;
        }
        if (!overridden)
            env_s.emplace_back(entry);
    }
    env_s.insert(env_s.end(), opts.env.begin(), opts.env.end());
    std::vector<char*> envp;
    for (auto& e : env_s)
        envp.push_back(e.data());
    envp.push_back(nullptr);

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    if (!opts.log_file.empty()) {
        posix_spawn_file_actions_addopen(&actions, 1, opts.log_file.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
        posix_spawn_file_actions_adddup2(&actions, 1, 2);
    }
    posix_spawnattr_t attr;
    posix_spawnattr_init(&attr);
    short flags = POSIX_SPAWN_SETSIGMASK | POSIX_SPAWN_SETSIGDEF;
    if (opts.new_process_group) {
        flags |= POSIX_SPAWN_SETPGROUP;
        posix_spawnattr_setpgroup(&attr, 0);
    }
    // children start with a clean mask and default handlers even if we block signals
    sigset_t none, all;
    sigemptyset(&none);
    sigfillset(&all);
    posix_spawnattr_setsigmask(&attr, &none);
    posix_spawnattr_setsigdefault(&attr, &all);
    posix_spawnattr_setflags(&attr, flags);

    pid_t pid = -1;
    const int rc = posix_spawn(&pid, path.c_str(), &actions, &attr, argv.data(), envp.data());
    posix_spawn_file_actions_destroy(&actions);
    posix_spawnattr_destroy(&attr);
    if (rc != 0)
        throw_dev_failed(reason::IoFailure, "cannot start " + path + ": " + std::strerror(rc), "proc::Child");
    pid_ = pid;
}

Child::~Child()
{
    if (valid() && !status_) {
        ::kill(pid_, SIGKILL);
        int st = 0;
        ::waitpid(pid_, &st, 0);
    }
}

Child::Child(Child&& other) noexcept { *this = std::move(other); }

Child& Child::operator=(Child&& other) noexcept
{
    if (this != &other) {
        if (valid() && !status_) {
            ::kill(pid_, SIGKILL);
            int st = 0;
            ::waitpid(pid_, &st, 0);
        }
        pid_ = other.pid_;
        status_ = other.status_;
        exit_code_ = other.exit_code_;
        other.pid_ = -1;
        other.status_.reset();
        other.exit_code_.reset();
    }
    return *this;
}

void Child::reaped(int status)
{
    status_ = status;
    exit_code_ = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
}

bool Child::running()
{
    if (!valid() || status_)
        return false;
    int st = 0;
    const pid_t r = ::waitpid(pid_, &st, WNOHANG);
    if (r == pid_) {
        reaped(st);
        return false;
    }
    if (r < 0 && errno == ECHILD) {
        reaped(0);
        return false;
    }
    return true;
}

bool Child::wait_for(std::chrono::milliseconds timeout)
{
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    auto nap = std::chrono::milliseconds(1);
    while (running()) {
        if (std::chrono::steady_clock::now() >= deadline)
            return false;
        std::this_thread::sleep_for(nap);
        nap = std::min(nap * 2, std::chrono::milliseconds(20));
    }
    return true;
}

void Child::signal(int sig)
{
    if (valid() && !status_)
        ::kill(pid_, sig);
}

void Child::stop(std::chrono::milliseconds grace)
{
    if (!running())
        return;
    signal(SIGTERM);
    if (wait_for(grace))
        return;
    signal(SIGKILL);
    int st = 0;
    if (::waitpid(pid_, &st, 0) == pid_)
        reaped(st);
}

void Child::release() noexcept
{
    pid_ = -1;
    status_.reset();
    exit_code_.reset();
}

std::optional<std::string> find_executable(const std::string& dir, const std::string& name)
{
    if (name.empty() || name.find('/') != std::string::npos)
        return std::nullopt;
    auto p = std::filesystem::path(dir) / name;
    std::error_code ec;
    if (!std::filesystem::is_regular_file(p, ec) || ::access(p.c_str(), X_OK) != 0)
        return std::nullopt;
    return std::filesystem::absolute(p, ec).string();
}

std::string self_dir()
{
    std::error_code ec;
    auto p = std::filesystem::read_symlink("/proc/self/exe", ec);
    return ec ? std::string(".") : p.parent_path().string();
}

} // namespace tng::proc
