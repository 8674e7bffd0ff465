#include "tng/polling/poll_cache.hpp"

#include "tng/core/device_name.hpp"
#include "tng/core/reasons.hpp"

#include <mutex>

namespace tng::polling {

std::string_view to_string(PollKind k)
{
    return k == PollKind::Command ? "command" : "attribute";
}

PollKind poll_kind_from_string(std::string_view s)
{
    if (iequals(s, "command") || iequals(s, "cmd"))
        return PollKind::Command;
    if (iequals(s, "attribute") || iequals(s, "attr"))
        return PollKind::Attribute;
    throw_dev_failed(reason::MalformedArgument, "poll kind must be command or attribute, got '" + std::string(s) + "'",
                     "poll_kind_from_string");
}

PollCache::Key PollCache::key(PollKind kind, const std::string& name)
{
    return {kind, to_lower(name)};
}

void PollCache::add(PollKind kind, const std::string& name, std::int64_t period_ms)
{
    if (period_ms < kMinPeriodMs)
        throw_dev_failed(reason::BadPeriod,
                         "polling period " + std::to_string(period_ms) + " ms is below " + std::to_string(kMinPeriodMs) +
                             " ms",
                         "PollCache::add");
    std::lock_guard l(mutex_);
    rings_[key(kind, name)].period_ms = period_ms;
}

bool PollCache::remove(PollKind kind, const std::string& name)
{
    std::lock_guard l(mutex_);
    return rings_.erase(key(kind, name)) > 0;
}

void PollCache::clear()
{
    std::lock_guard l(mutex_);
    rings_.clear();
}

bool PollCache::is_polled(PollKind kind, const std::string& name) const
{
    std::lock_guard l(mutex_);
    return rings_.count(key(kind, name)) > 0;
}

std::optional<std::int64_t> PollCache::period(PollKind kind, const std::string& name) const
{
    std::lock_guard l(mutex_);
    auto it = rings_.find(key(kind, name));
    if (it == rings_.end())
        return std::nullopt;
    return it->second.period_ms;
}

std::vector<PollEntry> PollCache::entries() const
{
    std::lock_guard l(mutex_);
    std::vector<PollEntry> out;
    for (const auto& [k, ring] : rings_)
        out.push_back({k.first, k.second, ring.period_ms});
    return out;
}

void PollCache::push(PollKind kind, const std::string& name, CacheSample sample)
{
    std::lock_guard l(mutex_);
    auto it = rings_.find(key(kind, name));
    if (it == rings_.end())
        return;
    auto& ring = it->second;
    if (!ring.samples.empty() && sample.acquired_at_ms <= ring.samples.front().acquired_at_ms)
        sample.acquired_at_ms = ring.samples.front().acquired_at_ms + 1;
    if (auto* av = std::get_if<AttributeValue>(&sample.value))
        av->set_timestamp_ms(sample.acquired_at_ms);
    ring.samples.push_front(std::move(sample));
    while (ring.samples.size() > depth_)
        ring.samples.pop_back();
}

CacheSample PollCache::read(PollKind kind, const std::string& name, std::int64_t now_ms) const
{
    std::lock_guard l(mutex_);
    auto it = rings_.find(key(kind, name));
    if (it == rings_.end())
        throw_dev_failed(reason::PollObjNotFound, std::string(to_string(kind)) + " " + name + " is not polled",
                         "PollCache::read");
    const auto& ring = it->second;
    if (ring.samples.empty())
        throw_dev_failed(reason::PollObjNotFound,
                         std::string(to_string(kind)) + " " + name + " is polled but has no sample yet",
                         "PollCache::read");
    const auto& newest = ring.samples.front();
    const auto age = now_ms - newest.acquired_at_ms;
    if (age > kStaleFactor * ring.period_ms)
        throw_dev_failed(reason::DataNotUpdated,
                         "newest sample of " + name + " is " + std::to_string(age) + " ms old, limit " +
                             std::to_string(kStaleFactor * ring.period_ms) + " ms",
                         "PollCache::read");
    CacheSample out = newest;
    if (auto* av = std::get_if<AttributeValue>(&out.value))
        av->set_source(DataSource::Cache);
    return out;
}

std::vector<CacheSample> PollCache::history(PollKind kind, const std::string& name) const
{
    std::lock_guard l(mutex_);
    auto it = rings_.find(key(kind, name));
    if (it == rings_.end())
        return {};
    return {it->second.samples.begin(), it->second.samples.end()};
}

} // namespace tng::polling
