#pragma once

#include "tng/pogo/definition.hpp"
#include "tng/pogo/regions.hpp"

#include <filesystem>
#include <vector>

namespace tng::pogo {

struct GeneratedFile {
    std::string name;
    std::string content;
};

inline constexpr const char* kOrphanFile = "orphaned_regions.txt";

/// Emits <Class>.hpp, <Class>.cpp, <Class>_main.cpp and <Class>.html. `regions`
/// maps file name -> region contents to splice in; absent regions are emitted empty.
std::vector<GeneratedFile> render(const ClassDefinition& def,
                                  const std::map<std::string, RegionMap>& regions = {});

struct Orphan {
    std::string file;
    std::string id;
    std::string content;
};

struct WriteReport {
    std::vector<std::string> written;
    std::vector<Orphan> orphans;
};

/// Fresh generation. Refuses (WOULD_OVERWRITE) when a target already holds protected regions.
WriteReport generate(const ClassDefinition& def, const std::filesystem::path& out_dir);

/// Re-emits over an existing directory, splicing back surviving regions. Regions whose
/// owner disappeared and that hold non-blank text are appended to orphaned_regions.txt.
/// Every existing file is scanned before anything is written, so MARKER_CORRUPT leaves
/// the directory untouched. Files whose content would not change are not rewritten.
WriteReport regenerate(const ClassDefinition& def, const std::filesystem::path& dir);

} // namespace tng::pogo
