#pragma once

#include "tng/core/attribute.hpp"
#include "tng/core/clock.hpp"
#include "tng/core/value.hpp"

#include <deque>
#include <map>
#include <optional>
#include <mutex>
#include <variant>

namespace tng::polling {

inline constexpr std::int64_t kMinPeriodMs = 10;
inline constexpr std::size_t kDefaultDepth = 10;
inline constexpr std::int64_t kStaleFactor = 3;

enum class PollKind : std::uint8_t { Command, Attribute };

std::string_view to_string(PollKind k);
/// "command" / "attribute" (case-insensitive); throws MALFORMED_ARGUMENT.
PollKind poll_kind_from_string(std::string_view s);

struct PollEntry {
    PollKind kind = PollKind::Command;
    std::string name;
    std::int64_t period_ms = 0;
    bool operator==(const PollEntry&) const = default;
};

struct CacheSample {
    std::variant<TangoValue, AttributeValue, DevErrorList> value;
    std::int64_t acquired_at_ms = 0;

    bool is_error() const noexcept { return value.index() == 2; }
};

// Ring buffers of samples, one per (kind, name). One writer per entry, many readers.
class PollCache {
public:
    explicit PollCache(std::size_t depth = kDefaultDepth) : depth_(depth) {}

    /// Adds or re-periods an entry; existing samples are kept. Throws BAD_PERIOD.
    void add(PollKind kind, const std::string& name, std::int64_t period_ms);
    /// Drops the entry and its samples; false when it was not polled.
    bool remove(PollKind kind, const std::string& name);
    void clear();

    bool is_polled(PollKind kind, const std::string& name) const;
    std::optional<std::int64_t> period(PollKind kind, const std::string& name) const;
    std::vector<PollEntry> entries() const;

    /// Appends as the newest sample, evicting beyond depth. The timestamp is bumped
    /// when needed so that timestamps strictly increase per entry. Ignored for unpolled names.
    void push(PollKind kind, const std::string& name, CacheSample sample);

    /// Newest sample no older than 3 * period.
    /// Throws API_PollObjNotFound (unpolled, or no sample yet) and API_DataNotUpdated (stale).
    CacheSample read(PollKind kind, const std::string& name, std::int64_t now_ms) const;

    /// Newest first.
    std::vector<CacheSample> history(PollKind kind, const std::string& name) const;

    std::size_t depth() const noexcept { return depth_; }

private:
    struct Ring {
        std::int64_t period_ms = 0;
        std::deque<CacheSample> samples; // front is newest
    };
    using Key = std::pair<PollKind, std::string>;
    static Key key(PollKind kind, const std::string& name);

    std::size_t depth_;
    mutable std::mutex mutex_; // plain mutex: a reader-preferring rwlock starves the poller
    std::map<Key, Ring> rings_;
};

} // namespace tng::polling
