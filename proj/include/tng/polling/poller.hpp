#pragma once

#include "tng/polling/poll_cache.hpp"

#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>

namespace tng::polling {

// Runs one acquisition for an entry. Must not throw: failures come back as error samples.
using Acquire = std::function<CacheSample(const PollEntry&)>;

// One polling thread per device. Entries run on a fixed-rate schedule; a late
// tick does not cause a burst of catch-up executions.
class DevicePoller {
public:
    /// With start_thread false nothing runs until tick_due() is called (clock-driven tests).
    DevicePoller(PollCache& cache, Acquire acquire, const Clock& clock = SystemClock::instance(),
                 bool start_thread = true);
    ~DevicePoller();

    DevicePoller(const DevicePoller&) = delete;
    DevicePoller& operator=(const DevicePoller&) = delete;

    /// Starts the thread if needed. The new entry is acquired at once, then every period.
    void add(const PollEntry& entry);
    void remove(PollKind kind, const std::string& name);

    /// Suspended pollers keep their entries but acquire nothing; the cache goes stale.
    void suspend();
    void resume();
    bool suspended() const;

    /// Runs every entry that is due at now_ms; returns how many ran. Used by the thread and by tests.
    std::size_t tick_due(std::int64_t now_ms);

    void stop();

private:
    struct Slot {
        PollEntry entry;
        std::int64_t next_due_ms = 0;
    };
    void run();

    PollCache& cache_;
    Acquire acquire_;
    const Clock& clock_;

    mutable std::mutex mutex_;
    std::condition_variable cv_;
    std::vector<Slot> slots_;
    bool suspended_ = false;
    bool stopping_ = false;
    bool threaded_ = true;
    std::thread thread_;
};

} // namespace tng::polling
