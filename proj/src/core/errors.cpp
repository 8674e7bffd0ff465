#include "tng/core/errors.hpp"

#include "tng/core/clock.hpp"

#include <chrono>

namespace tng {

std::string_view to_string(ErrSeverity s)
{
    switch (s) {
    case ErrSeverity::Warn: return "WARN";
    case ErrSeverity::Err: return "ERR";
    case ErrSeverity::Panic: return "PANIC";
    }
    return "?";
}

namespace {

std::string render(const DevErrorList& errors)
{
    std::string out;
    for (auto it = errors.rbegin(); it != errors.rend(); ++it) {
        if (!out.empty())
            out += " <- ";
        out += it->reason;
        out += ": ";
        out += it->description;
        if (!it->origin.empty()) {
            out += " (";
            out += it->origin;
            out += ')';
        }
    }
    return out;
}

} // namespace

DevFailed::DevFailed(DevErrorList errors) : errors_(std::move(errors))
{
    if (errors_.empty())
        errors_.push_back(DevError{"API_UnknownError", "empty error stack", "", ErrSeverity::Err});
    what_ = render(errors_);
}

DevFailed::DevFailed(std::string_view reason, std::string description, std::string origin, ErrSeverity severity)
    : DevFailed(DevErrorList{DevError{std::string(reason), std::move(description), std::move(origin), severity}})
{
}

bool DevFailed::has_reason(std::string_view reason) const noexcept
{
    for (const auto& e : errors_)
        if (e.reason == reason)
            return true;
    return false;
}

DevFailed DevFailed::appended(std::string_view reason, std::string description, std::string origin) const
{
    DevErrorList next = errors_;
    next.push_back(DevError{std::string(reason), std::move(description), std::move(origin), ErrSeverity::Err});
    return DevFailed(std::move(next));
}

void throw_dev_failed(std::string_view reason, std::string description, std::string origin)
{
    throw DevFailed(reason, std::move(description), std::move(origin));
}

std::int64_t SystemClock::now_ms() const { return tng::now_ms(); }

SystemClock& SystemClock::instance()
{
    static SystemClock clock;
    return clock;
}

std::int64_t now_ms()
{
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

} // namespace tng
