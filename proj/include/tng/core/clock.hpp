#pragma once

#include <atomic>
#include <cstdint>

namespace tng {

// Millisecond wall clock. Polling and supervision take one by reference so tests
// can drive time explicitly.
class Clock {
public:
    virtual ~Clock() = default;
    virtual std::int64_t now_ms() const = 0;
};

class SystemClock final : public Clock {
public:
    std::int64_t now_ms() const override;
    static SystemClock& instance();
};

class ManualClock final : public Clock {
public:
    explicit ManualClock(std::int64_t start_ms = 1'000'000) : now_(start_ms) {}
    std::int64_t now_ms() const override { return now_.load(); }
    void advance(std::int64_t ms) { now_ += ms; }
    void set(std::int64_t ms) { now_ = ms; }

private:
    std::atomic<std::int64_t> now_;
};

std::int64_t now_ms();

} // namespace tng
