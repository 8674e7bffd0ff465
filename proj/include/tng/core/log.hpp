#pragma once

#include <string_view>

namespace tng {

enum class LogLevel : int { Debug = 0, Info = 1, Warn = 2, Error = 3 };

// One line per call to stderr: "<iso time> <level> <tag>: <message>".
// TNG_LOG=debug|info|warn|error sets the threshold (default info).
void log(LogLevel level, std::string_view tag, std::string_view message);

inline void log_debug(std::string_view tag, std::string_view m) { log(LogLevel::Debug, tag, m); }
inline void log_info(std::string_view tag, std::string_view m) { log(LogLevel::Info, tag, m); }
inline void log_warn(std::string_view tag, std::string_view m) { log(LogLevel::Warn, tag, m); }
inline void log_error(std::string_view tag, std::string_view m) { log(LogLevel::Error, tag, m); }

} // namespace tng
