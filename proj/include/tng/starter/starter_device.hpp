#pragma once

#include "tng/server/device_class.hpp"
#include "tng/starter/naming.hpp"
#include "tng/starter/supervisor.hpp"

namespace tng::starter {

inline constexpr const char* kStarterClass = "Starter";

// Starter device: one per host, supervising that host's servers.
//
// Properties: StartDsPath (directories searched for server executables, default:
// the Starter's own directory), LogDir (per-server stdout/stderr files, default
// the temp directory), ScanPeriodMs (default 2000).
std::shared_ptr<server::DeviceClass> make_starter_class();

} // namespace tng::starter
