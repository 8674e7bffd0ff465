#pragma once

#include "tng/core/attribute.hpp"
#include "tng/core/device_name.hpp"
#include "tng/core/value.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>

namespace tng::client {
class Database;
}

namespace tng::server {

class DeviceClass;

// Device properties as fetched from the database at init, with class defaults
// filled in for anything the database does not define.
class PropertyBag {
public:
    void set(const std::string& name, std::vector<std::string> values);
    bool has(const std::string& name) const;
    std::vector<std::string> names() const;

    /// Throws API_PropertyParseFailed when the property is missing or does not parse.
    const std::vector<std::string>& raw(const std::string& name) const;
    std::string get_string(const std::string& name) const;
    std::int64_t get_integer(const std::string& name) const;
    double get_float(const std::string& name) const;
    std::vector<std::string> get_string_list(const std::string& name) const;
    std::vector<std::int64_t> get_integer_list(const std::string& name) const;
    std::vector<double> get_float_list(const std::string& name) const;

private:
    std::map<std::string, std::vector<std::string>> values_; // lowercase keys
};

// Base of every device implementation. The framework serializes all calls into
// one device, so subclasses need no locking of their own state.
class Device {
public:
    Device(DeviceClass& cls, DeviceName name);
    virtual ~Device() = default;

    Device(const Device&) = delete;
    Device& operator=(const Device&) = delete;

    virtual void init_device() {}
    virtual void delete_device() {}
    /// Backs the State command; defaults to the stored state.
    virtual DeviceState dev_state() { return get_state(); }
    /// Backs the Status command; defaults to the stored status text.
    virtual std::string dev_status();

    const DeviceName& name() const noexcept { return name_; }
    DeviceClass& device_class() const noexcept { return class_; }

    DeviceState get_state() const noexcept { return state_.load(); }
    void set_state(DeviceState s) noexcept { state_.store(s); }
    std::string get_status() const;
    void set_status(std::string s);

    const PropertyBag& properties() const noexcept { return properties_; }
    /// Database the hosting server runs against; null for servers without one.
    const std::shared_ptr<client::Database>& database() const noexcept { return database_; }

private:
    friend class DeviceServer;

    DeviceClass& class_;
    DeviceName name_;
    std::atomic<DeviceState> state_{DeviceState::UNKNOWN};
    mutable std::mutex status_mutex_;
    std::string status_;
    PropertyBag properties_;
    std::shared_ptr<client::Database> database_;
};

} // namespace tng::server
