#pragma once

#include "tng/core/clock.hpp"
#include "tng/core/device_name.hpp"
#include "tng/db/records.hpp"

#include <map>
#include <shared_mutex>

namespace tng::db {

// Whole database content. Keys are lowercase; records keep their original spelling.
struct DatabaseState {
    struct Owner {
        std::string name;                 // as first written
        std::vector<Property> properties; // insertion order, names unique case-insensitively
        bool operator==(const Owner&) const = default;
    };

    std::map<std::string, ServerRecord> servers;
    std::map<DeviceName, DeviceRecord> devices;
    std::map<std::string, Owner> owners;

    bool operator==(const DatabaseState&) const = default;

    /// Throws BAD_VALUE describing the first broken reference.
    void check_integrity() const;
};

/// Case-insensitive glob where '*' matches any run of characters.
bool glob_match(std::string_view pattern, std::string_view text);

// The configuration and naming database. Mutations are serialized and each one
// rewrites the data file atomically; reads run concurrently.
class DatabaseStore {
public:
    /// Empty path: memory only.
    explicit DatabaseStore(std::string path = {}, const Clock& clock = SystemClock::instance());

    /// Missing or empty file gives a database holding only its own records.
    /// Throws CORRUPT_FILE (with the line number) or IO_FAILURE.
    void load();

    void add_server(const ServerRecord& server);
    void delete_server(const std::string& server_id);
    ServerRecord get_server_info(const std::string& server_id) const;
    std::vector<std::string> get_device_list(const std::string& server_id, const std::string& class_name) const;

    void export_device(const std::string& name, const std::string& endpoint, const std::string& server_id);
    void unexport_device(const std::string& name);
    void unexport_server(const std::string& server_id);
    DeviceRecord import_device(const std::string& name) const;

    std::vector<Property> get_property(const std::string& owner, const std::vector<std::string>& names) const;
    void put_property(const std::string& owner, const std::vector<Property>& props);
    void delete_property(const std::string& owner, const std::vector<std::string>& names);
    std::vector<std::string> get_property_list(const std::string& owner) const;

    /// Pattern "d/f/m" with '*' wildcards per part; throws MALFORMED_PATTERN.
    std::vector<std::string> browse_devices(const std::string& pattern) const;
    std::vector<std::string> get_server_list(const std::string& pattern) const;
    std::vector<std::string> get_host_list(const std::string& pattern) const;
    std::vector<std::string> get_class_list(const std::string& pattern) const;

    DatabaseState snapshot() const;
    const std::string& path() const noexcept { return path_; }

private:
    void ensure_self_records(DatabaseState& st) const;
    void commit(DatabaseState next);

    std::string path_;
    const Clock& clock_;
    mutable std::shared_mutex mutex_;
    DatabaseState state_;
};

// Text form of the database file (see docs/FORMAT.md).
std::string serialize_state(const DatabaseState& st);
/// Throws CORRUPT_FILE naming the offending line.
DatabaseState parse_state(std::string_view text);

} // namespace tng::db
