#include "tng/core/log.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <mutex>
#include <string>

namespace tng {

namespace {

LogLevel threshold()
{
    static const LogLevel level = [] {
        const char* v = std::getenv("TNG_LOG");
        if (!v)
            return LogLevel::Info;
        std::string s(v);
        if (s == "debug")
            return LogLevel::Debug;
        if (s == "warn")
            return LogLevel::Warn;
        if (s == "error")
            return LogLevel::Error;
        return LogLevel::Info;
    }();
    return level;
}

const char* label(LogLevel l)
{
    switch (l) {
    case LogLevel::Debug: return "DEBUG";
    case LogLevel::Info: return "INFO";
    case LogLevel::Warn: return "WARN";
    case LogLevel::Error: return "ERROR";
    }
    return "?";
}

} // namespace

void log(LogLevel level, std::string_view tag, std::string_view message)
{
    if (level < threshold())
        return;
    static std::mutex m;
    const auto now = std::chrono::system_clock::now();
    const auto t = std::chrono::system_clock::to_time_t(now);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&t, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%S", &tm);
    std::lock_guard l(m);
    std::fprintf(stderr, "%s.%03dZ %s %.*s: %.*s\n", stamp, static_cast<int>(ms), label(level),
                 static_cast<int>(tag.size()), tag.data(), static_cast<int>(message.size()), message.data());
    std::fflush(stderr);
}

} // namespace tng
