#include "tng/polling/poller.hpp"

#include "tng/core/device_name.hpp"

#include <algorithm>
#include <chrono>

namespace tng::polling {

DevicePoller::DevicePoller(PollCache& cache, Acquire acquire, const Clock& clock, bool start_thread)
    : cache_(cache), acquire_(std::move(acquire)), clock_(clock), threaded_(start_thread)
{
}

DevicePoller::~DevicePoller()
{
    stop();
}

void DevicePoller::add(const PollEntry& entry)
{
    cache_.add(entry.kind, entry.name, entry.period_ms);
    {
        std::lock_guard l(mutex_);
        auto it = std::find_if(slots_.begin(), slots_.end(), [&](const Slot& s) {
            return s.entry.kind == entry.kind && iequals(s.entry.name, entry.name);
        });
        if (it != slots_.end())
            it->entry.period_ms = entry.period_ms;
        else
            slots_.push_back({entry, clock_.now_ms()});
        if (threaded_ && !thread_.joinable() && !stopping_)
            thread_ = std::thread([this] { run(); });
    }
    cv_.notify_all();
}

void DevicePoller::remove(PollKind kind, const std::string& name)
{
    {
        std::lock_guard l(mutex_);
        std::erase_if(slots_, [&](const Slot& s) { return s.entry.kind == kind && iequals(s.entry.name, name); });
    }
    cache_.remove(kind, name);
    cv_.notify_all();
}

void DevicePoller::suspend()
{
    std::lock_guard l(mutex_);
    suspended_ = true;
}

void DevicePoller::resume()
{
    {
        std::lock_guard l(mutex_);
        suspended_ = false;
        const auto now = clock_.now_ms();
        for (auto& s : slots_)
            s.next_due_ms = std::min(s.next_due_ms, now);
    }
    cv_.notify_all();
}

bool DevicePoller::suspended() const
{
    std::lock_guard l(mutex_);
    return suspended_;
}

std::size_t DevicePoller::tick_due(std::int64_t now_ms)
{
    std::vector<PollEntry> due;
    {
        std::lock_guard l(mutex_);
        if (suspended_ || stopping_)
            return 0;
        for (auto& s : slots_) {
            if (s.next_due_ms > now_ms)
                continue;
            due.push_back(s.entry);
            s.next_due_ms += s.entry.period_ms;
            if (s.next_due_ms <= now_ms)
                s.next_due_ms = now_ms + s.entry.period_ms;
        }
    }
    for (const auto& e : due)
        cache_.push(e.kind, e.name, acquire_(e));
    return due.size();
}

void DevicePoller::stop()
{
    {
        std::lock_guard l(mutex_);
        stopping_ = true;
    }
    cv_.notify_all();
    if (thread_.joinable())
        thread_.join();
}

void DevicePoller::run()
{
    std::unique_lock l(mutex_);
    while (!stopping_) {
        if (suspended_ || slots_.empty()) {
            cv_.wait(l);
            continue;
        }
        auto next = slots_.front().next_due_ms;
        for (const auto& s : slots_)
            next = std::min(next, s.next_due_ms);
        const auto now = clock_.now_ms();
        if (next > now) {
            cv_.wait_for(l, std::chrono::milliseconds(next - now));
            continue;
        }
        l.unlock();
        tick_due(now);
        l.lock();
    }
}

} // namespace tng::polling
