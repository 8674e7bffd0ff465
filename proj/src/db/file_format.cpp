#include "tng/core/errors.hpp"
#include "tng/core/reasons.hpp"
#include "tng/db/store.hpp"

#include <charconv>
#include <set>

namespace tng::db {

namespace {

std::string quote(std::string_view s)
{
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out + '"';
}

struct Token {
    std::string text;
    bool quoted = false;
};

class LineParser {
public:
    LineParser(std::string_view line, std::size_t number) : line_(line), number_(number) {}

    [[noreturn]] void fail(const std::string& why) const
    {
        throw_dev_failed(reason::CorruptFile, "line " + std::to_string(number_) + ": " + why, "parse_state");
    }

    std::vector<Token> tokens()
    {
        std::vector<Token> out;
        std::size_t i = 0;
        while (i < line_.size()) {
            if (line_[i] == ' ' || line_[i] == '\t') {
                ++i;
                continue;
            }
            Token t;
            if (line_[i] == '"') {
                t.quoted = true;
                ++i;
                bool closed = false;
                while (i < line_.size()) {
                    char c = line_[i++];
                    if (c == '"') {
                        closed = true;
                        break;
                    }
                    if (c != '\\') {
                        t.text += c;
                        continue;
                    }
                    if (i >= line_.size())
                        fail("dangling escape");
                    switch (char e = line_[i++]) {
                    case '"': t.text += '"'; break;
                    case '\\': t.text += '\\'; break;
                    case 'n': t.text += '\n'; break;
                    case 'r': t.text += '\r'; break;
                    case 't': t.text += '\t'; break;
                    default: fail(std::string("unknown escape \\") + e);
                    }
                }
                if (!closed)
                    fail("unterminated string");
                if (i < line_.size() && line_[i] != ' ' && line_[i] != '\t')
                    fail("missing space after string");
            } else {
                while (i < line_.size() && line_[i] != ' ' && line_[i] != '\t')
                    t.text += line_[i++];
            }
            out.push_back(std::move(t));
        }
        return out;
    }

    const std::string& str(const Token& t, const char* what) const
    {
        if (!t.quoted)
            fail(std::string(what) + " must be a quoted string");
        return t.text;
    }

    std::int64_t integer(const Token& t, const char* what, std::int64_t max) const
    {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (t.quoted || ec != std::errc() || p != t.text.data() + t.text.size() || v < 0 || v > max)
            fail(std::string(what) + " must be an integer in [0, " + std::to_string(max) + "]");
        return v;
    }

    DeviceName device(const Token& t) const
    {
        const auto& s = str(t, "device name");
        if (!DeviceName::is_valid(s))
            fail("'" + s + "' is not a device name");
        return DeviceName::parse(s);
    }

private:
    std::string_view line_;
    std::size_t number_;
};

} // namespace

std::string serialize_state(const DatabaseState& st)
{
    std::string out = "# tng configuration database, format 1\n\n[servers]\n";
    for (const auto& [k, s] : st.servers) {
        out += quote(s.server_id) + ' ' + quote(s.host) + ' ' + std::to_string(s.level);
        for (const auto& b : s.classes)
            out += ' ' + quote(b.class_name);
        out += '\n';
    }
    out += "\n[devices]\n";
    // binding order first so that reloading reproduces device list order
    std::set<DeviceName> written;
    auto emit = [&](const DeviceRecord& d) {
        out += quote(d.name) + ' ' + quote(d.class_name) + ' ' + quote(d.server_id) + ' ' + (d.exported ? "1" : "0") +
               ' ' + quote(d.endpoint) + ' ' + std::to_string(d.export_time_ms) + '\n';
        written.insert(DeviceName::parse(d.name));
    };
    for (const auto& [k, s] : st.servers)
        for (const auto& b : s.classes)
            for (const auto& d : b.devices)
                if (auto it = st.devices.find(DeviceName::parse(d)); it != st.devices.end())
                    emit(it->second);
    for (const auto& [n, d] : st.devices)
        if (!written.count(n))
            emit(d);
    out += "\n[properties]\n";
    for (const auto& [k, o] : st.owners)
        for (const auto& p : o.properties) {
            out += quote(o.name) + ' ' + quote(p.name);
            for (const auto& v : p.values)
                out += ' ' + quote(v);
            out += '\n';
        }
    return out;
}

DatabaseState parse_state(std::string_view text)
{
    DatabaseState st;
    enum class Section { None, Servers, Devices, Properties } section = Section::None;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        auto line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++number;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        LineParser lp(line, number);
        auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#')
            continue;
        line = line.substr(first);
        if (line == "[servers]") {
            section = Section::Servers;
            continue;
        }
        if (line == "[devices]") {
            section = Section::Devices;
            continue;
        }
        if (line == "[properties]") {
            section = Section::Properties;
            continue;
        }
        if (line.front() == '[')
            lp.fail("unknown section " + std::string(line));
        auto toks = lp.tokens();
        switch (section) {
        case Section::None:
            lp.fail("data before the first section header");
        case Section::Servers: {
            if (toks.size() < 3)
                lp.fail("server line needs id, host and level");
            ServerRecord s{lp.str(toks[0], "server id"), lp.str(toks[1], "host"),
                           static_cast<std::uint32_t>(lp.integer(toks[2], "level", 1'000'000)), {}};
            for (std::size_t i = 3; i < toks.size(); ++i)
                s.classes.push_back({lp.str(toks[i], "class name"), {}});
            if (!st.servers.emplace(to_lower(s.server_id), s).second)
                lp.fail("server " + s.server_id + " defined twice");
            break;
        }
        case Section::Devices: {
            if (toks.size() != 6)
                lp.fail("device line needs name, class, server, exported, endpoint and export time");
            DeviceRecord d;
            auto n = lp.device(toks[0]);
            d.name = n.str();
            d.class_name = lp.str(toks[1], "class name");
            d.server_id = lp.str(toks[2], "server id");
            d.exported = lp.integer(toks[3], "exported flag", 1) == 1;
            d.endpoint = lp.str(toks[4], "endpoint");
            d.export_time_ms = lp.integer(toks[5], "export time", INT64_MAX);
            auto srv = st.servers.find(to_lower(d.server_id));
            if (srv == st.servers.end())
                lp.fail("device " + d.name + " references unknown server " + d.server_id);
            if (!iequals(d.class_name, kAdminClass)) {
                bool bound = false;
                for (auto& b : srv->second.classes)
                    if (iequals(b.class_name, d.class_name)) {
                        b.devices.push_back(d.name);
                        bound = true;
                    }
                if (!bound)
                    lp.fail("class " + d.class_name + " is not listed for server " + d.server_id);
            }
            if (!st.devices.emplace(n, d).second)
                lp.fail("device " + d.name + " defined twice");
            break;
        }
        case Section::Properties: {
            if (toks.size() < 3)
                lp.fail("property line needs owner, name and at least one value");
            const auto& owner = lp.str(toks[0], "owner");
            auto& o = st.owners[to_lower(owner)];
            if (o.name.empty())
                o.name = owner;
            Property p{lp.str(toks[1], "property name"), {}};
            for (std::size_t i = 2; i < toks.size(); ++i)
                p.values.push_back(lp.str(toks[i], "property value"));
            for (const auto& q : o.properties)
                if (iequals(q.name, p.name))
                    lp.fail("property " + p.name + " of " + owner + " defined twice");
            o.properties.push_back(std::move(p));
            break;
        }
        }
    }
    return st;
}

} // namespace tng::db
