#pragma once

#include "tng/core/device_name.hpp"

namespace tng::starter {

/// "tango/admin/<host>".
inline std::string starter_device_name(std::string_view host) { return "tango/admin/" + to_lower(host); }

} // namespace tng::starter
