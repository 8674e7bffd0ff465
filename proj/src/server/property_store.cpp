#include "tng/server/property_store.hpp"

#include "tng/client/database.hpp"
#include "tng/core/device_name.hpp"

namespace tng::server {

std::vector<db::Property> MemoryPropertyStore::get(const std::string& device, const std::vector<std::string>& names)
{
    std::lock_guard l(mutex_);
    std::vector<db::Property> out;
    auto dev = data_.find(to_lower(device));
    for (const auto& n : names) {
        db::Property p{n, {}};
        if (dev != data_.end()) {
            auto it = dev->second.find(to_lower(n));
            if (it != dev->second.end())
                p.values = it->second;
        }
        out.push_back(std::move(p));
    }
    return out;
}

void MemoryPropertyStore::put(const std::string& device, const db::Property& property)
{
    std::lock_guard l(mutex_);
    data_[to_lower(device)][to_lower(property.name)] = property.values;
}

std::vector<db::Property> DatabasePropertyStore::get(const std::string& device, const std::vector<std::string>& names)
{
    return db_->get_property(device, names);
}

void DatabasePropertyStore::put(const std::string& device, const db::Property& property)
{
    db_->put_property(device, {property});
}

} // namespace tng::server
