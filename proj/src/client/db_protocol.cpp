#include "tng/db/protocol.hpp"

#include "tng/core/device_name.hpp"
#include "tng/core/errors.hpp"
#include "tng/core/reasons.hpp"

#include <charconv>

namespace tng::db {

std::string admin_device_name(const std::string& server_id)
{
    return to_lower("dserver/" + server_id);
}

namespace protocol {

namespace {

[[noreturn]] void malformed(const std::string& what)
{
    throw_dev_failed(reason::MalformedArgument, what, "db protocol");
}

std::uint64_t parse_count(const std::string& s, const char* what)
{
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        malformed(std::string("bad ") + what + " '" + s + "'");
    return v;
}

class Cursor {
public:
    explicit Cursor(const std::vector<std::string>& v) : v_(v) {}
    const std::string& next(const char* what)
    {
        if (i_ >= v_.size())
            malformed(std::string("argument list ends before ") + what);
        return v_[i_++];
    }
    std::size_t count(const char* what)
    {
        auto n = parse_count(next(what), what);
        if (n > v_.size() - i_)
            malformed(std::string(what) + " exceeds argument list");
        return static_cast<std::size_t>(n);
    }
    bool done() const { return i_ == v_.size(); }

private:
    const std::vector<std::string>& v_;
    std::size_t i_ = 0;
};

} // namespace

std::vector<std::string> pack_server(const ServerRecord& s)
{
    std::vector<std::string> out{s.server_id, s.host, std::to_string(s.level), std::to_string(s.classes.size())};
    for (const auto& c : s.classes) {
        out.push_back(c.class_name);
        out.push_back(std::to_string(c.devices.size()));
        out.insert(out.end(), c.devices.begin(), c.devices.end());
    }
    return out;
}

ServerRecord unpack_server(const std::vector<std::string>& v)
{
    Cursor c(v);
    ServerRecord s;
    s.server_id = c.next("server id");
    s.host = c.next("host");
    auto level = parse_count(c.next("level"), "level");
    if (level > 1'000'000)
        malformed("level out of range");
    s.level = static_cast<std::uint32_t>(level);
    const auto n = c.count("class count");
    for (std::size_t i = 0; i < n; ++i) {
        ClassBinding b;
        b.class_name = c.next("class name");
        const auto d = c.count("device count");
        for (std::size_t k = 0; k < d; ++k)
            b.devices.push_back(c.next("device name"));
        s.classes.push_back(std::move(b));
    }
    if (!c.done())
        malformed("trailing arguments after server record");
    return s;
}

LongStringArray pack_device(const DeviceRecord& d)
{
    return LongStringArray{{d.exported ? 1 : 0},
                           {d.name, d.endpoint, d.class_name, d.server_id, std::to_string(d.export_time_ms)}};
}

DeviceRecord unpack_device(const LongStringArray& v)
{
    if (v.longs.size() != 1 || v.strings.size() != 5)
        malformed("device record has wrong shape");
    DeviceRecord d;
    d.exported = v.longs[0] != 0;
    d.name = v.strings[0];
    d.endpoint = v.strings[1];
    d.class_name = v.strings[2];
    d.server_id = v.strings[3];
    d.export_time_ms = static_cast<std::int64_t>(parse_count(v.strings[4], "export time"));
    return d;
}

std::vector<std::string> pack_properties(const std::string& owner, const std::vector<Property>& props)
{
    std::vector<std::string> out{owner, std::to_string(props.size())};
    for (const auto& p : props) {
        out.push_back(p.name);
        out.push_back(std::to_string(p.values.size()));
        out.insert(out.end(), p.values.begin(), p.values.end());
    }
    return out;
}

std::vector<Property> unpack_properties(const std::vector<std::string>& v, std::string* owner)
{
    Cursor c(v);
    auto o = c.next("owner");
    if (owner)
        *owner = o;
    const auto n = c.count("property count");
    std::vector<Property> out;
    for (std::size_t i = 0; i < n; ++i) {
        Property p;
        p.name = c.next("property name");
        const auto k = c.count("value count");
        for (std::size_t j = 0; j < k; ++j)
            p.values.push_back(c.next("property value"));
        out.push_back(std::move(p));
    }
    if (!c.done())
        malformed("trailing arguments after properties");
    return out;
}

} // namespace protocol
} // namespace tng::db
