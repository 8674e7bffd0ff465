#pragma once

#include <map>
#include <string>
#include <string_view>

namespace tng::pogo {

inline constexpr std::string_view kRegionToken = "PROTECTED-REGION";

// Region id -> verbatim content: the complete lines between the BEGIN and END markers.
using RegionMap = std::map<std::string, std::string>;

/// Throws MARKER_CORRUPT on unbalanced, nested, mismatched or duplicated markers and on
/// any line that mentions the token without being a well-formed marker.
RegionMap scan_regions(std::string_view text, std::string_view source_name = "<text>");

bool contains_markers(std::string_view text);

/// The marker line, without indentation or newline.
std::string begin_marker(std::string_view id);
std::string end_marker(std::string_view id);

} // namespace tng::pogo
