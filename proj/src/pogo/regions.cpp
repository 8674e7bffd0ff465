#include "tng/pogo/regions.hpp"

#include "tng/core/errors.hpp"
#include "tng/core/reasons.hpp"

#include <optional>
#include <regex>

namespace tng::pogo {

namespace {

const std::regex& marker_re()
{
    static const std::regex re(R"(^[ \t]*(//|#|<!--)[ \t]*PROTECTED-REGION (BEGIN|END) ([A-Za-z0-9_.:-]+)[ \t]*(-->)?[ \t]*\r?$)");
    return re;
}

} // namespace

std::string begin_marker(std::string_view id) { return std::string("// PROTECTED-REGION BEGIN ") + std::string(id); }
std::string end_marker(std::string_view id) { return std::string("// PROTECTED-REGION END ") + std::string(id); }

bool contains_markers(std::string_view text) { return text.find(kRegionToken) != std::string_view::npos; }

RegionMap scan_regions(std::string_view text, std::string_view source_name)
{
    RegionMap out;
    std::optional<std::string> open;
    std::size_t open_line = 0;
    std::size_t content_start = 0;
    std::size_t line_no = 0;

    auto corrupt = [&](std::size_t line, const std::string& what) {
        throw_dev_failed(reason::MarkerCorrupt, std::string(source_name) + ":" + std::to_string(line) + ": " + what,
                         "pogo");
    };

    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        const auto end = nl == std::string_view::npos ? text.size() : nl + 1;
        const auto line = text.substr(pos, (nl == std::string_view::npos ? text.size() : nl) - pos);
        ++line_no;
        if (line.find(kRegionToken) != std::string_view::npos) {
            std::match_results<std::string_view::const_iterator> m;
            if (!std::regex_match(line.begin(), line.end(), m, marker_re()))
                corrupt(line_no, "malformed marker line");
            const bool begin = m[2] == "BEGIN";
            const std::string id = m[3];
            if (begin) {
                if (open)
                    corrupt(line_no, "region " + id + " opened inside region " + *open + " (line " +
                                         std::to_string(open_line) + ")");
                if (out.count(id))
                    corrupt(line_no, "duplicate region " + id);
                open = id;
                open_line = line_no;
                content_start = end;
            } else {
                if (!open)
                    corrupt(line_no, "END of region " + id + " without BEGIN");
                if (*open != id)
                    corrupt(line_no, "END of region " + id + " closes region " + *open);
                out.emplace(id, std::string(text.substr(content_start, pos - content_start)));
                open.reset();
            }
        }
        pos = end;
    }
    if (open)
        corrupt(open_line, "region " + *open + " is never closed");
    return out;
}

} // namespace tng::pogo
