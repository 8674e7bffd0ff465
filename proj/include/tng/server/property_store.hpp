#pragma once

#include "tng/db/records.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace tng::client {
class Database;
}

namespace tng::server {

// Where a server reads device properties and writes back polling configuration.
class PropertyStore {
public:
    virtual ~PropertyStore() = default;
    /// Undefined names come back with no values or are omitted.
    virtual std::vector<db::Property> get(const std::string& device, const std::vector<std::string>& names) = 0;
    virtual void put(const std::string& device, const db::Property& property) = 0;
};

// In-process store for servers run without a database.
class MemoryPropertyStore final : public PropertyStore {
public:
    std::vector<db::Property> get(const std::string& device, const std::vector<std::string>& names) override;
    void put(const std::string& device, const db::Property& property) override;

private:
    std::mutex mutex_;
    std::map<std::string, std::map<std::string, std::vector<std::string>>> data_;
};

class DatabasePropertyStore final : public PropertyStore {
public:
    explicit DatabasePropertyStore(std::shared_ptr<client::Database> db) : db_(std::move(db)) {}
    std::vector<db::Property> get(const std::string& device, const std::vector<std::string>& names) override;
    void put(const std::string& device, const db::Property& property) override;

private:
    std::shared_ptr<client::Database> db_;
};

} // namespace tng::server
