#pragma once

#include "tng/db/store.hpp"
#include "tng/server/device_class.hpp"

namespace tng::db {

// The "DataBase" device class: every store operation as one command, with the
// argument layouts of tng/db/protocol.hpp.
std::shared_ptr<server::DeviceClass> make_database_class(std::shared_ptr<DatabaseStore> store);

} // namespace tng::db
