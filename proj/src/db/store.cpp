#include "tng/db/store.hpp"

#include "tng/core/reasons.hpp"
#include "tng/net/socket.hpp"
#include "tng/server/runtime.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

namespace tng::db {

namespace {

constexpr const char* kOrigin = "DatabaseStore";

std::string key(std::string_view s)
{
    return to_lower(s);
}

void check_server_id(const std::string& id)
{
    const auto slash = id.find('/');
    const bool ok = slash != std::string::npos && slash > 0 && slash + 1 < id.size() &&
                    id.find('/', slash + 1) == std::string::npos &&
                    std::none_of(id.begin(), id.end(), [](unsigned char c) { return c <= ' ' || c == '*'; });
    if (!ok)
        throw_dev_failed(reason::MalformedName, "server id '" + id + "' is not Exec/instance", kOrigin);
}

void check_owner(const std::string& owner)
{
    if (owner.empty() || std::any_of(owner.begin(), owner.end(), [](unsigned char c) { return c < ' '; }))
        throw_dev_failed(reason::MalformedName, "property owner '" + owner + "' is malformed", kOrigin);
}

[[noreturn]] void not_defined(const std::string& name)
{
    throw_dev_failed(reason::DeviceNotDefined, "device " + name + " is not defined in the database", kOrigin);
}

bool is_pattern_char(unsigned char c)
{
    return c > ' ' && c != '/';
}

void check_pattern(std::string_view pattern, std::size_t parts, const char* what)
{
    std::size_t n = 1;
    std::size_t run = 0;
    bool ok = !pattern.empty();
    for (unsigned char c : pattern) {
        if (c == '/') {
            ok = ok && run > 0;
            ++n;
            run = 0;
        } else if (!is_pattern_char(c)) {
            ok = false;
        } else {
            ++run;
        }
    }
    ok = ok && run > 0;
    // a lone "*" is accepted everywhere
    if (pattern == "*")
        return;
    if (!ok || (parts != 0 && n != parts))
        throw_dev_failed(reason::MalformedPattern, "'" + std::string(pattern) + "' is not a valid " + what + " pattern",
                         kOrigin);
}

} // namespace

bool glob_match(std::string_view pattern, std::string_view text)
{
    // iterative wildcard matching with single backtrack point
    std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
    auto eq = [](char a, char b) {
        return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
    };
    while (t < text.size()) {
        if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (p < pattern.size() && eq(pattern[p], text[t])) {
            ++p;
            ++t;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*')
        ++p;
    return p == pattern.size();
}

void DatabaseState::check_integrity() const
{
    auto broken = [](const std::string& why) { throw_dev_failed(reason::BadValue, why, "DatabaseState"); };
    for (const auto& [k, s] : servers) {
        if (k != key(s.server_id))
            broken("server key mismatch for " + s.server_id);
        std::set<std::string> classes;
        for (const auto& b : s.classes) {
            if (!classes.insert(key(b.class_name)).second)
                broken("server " + s.server_id + " lists class " + b.class_name + " twice");
            if (b.devices.empty())
                broken("server " + s.server_id + " has no device for class " + b.class_name);
            for (const auto& d : b.devices) {
                auto it = devices.find(DeviceName::parse(d));
                if (it == devices.end())
                    broken("server " + s.server_id + " binds undefined device " + d);
                if (key(it->second.server_id) != k || !iequals(it->second.class_name, b.class_name))
                    broken("device " + d + " disagrees with server " + s.server_id + " about its binding");
            }
        }
    }
    for (const auto& [n, d] : devices) {
        auto it = servers.find(key(d.server_id));
        if (it == servers.end())
            broken("device " + d.name + " references unknown server " + d.server_id);
        if (iequals(d.class_name, kAdminClass)) {
            if (d.name != admin_device_name(it->second.server_id))
                broken("admin device " + d.name + " does not match server " + d.server_id);
            continue;
        }
        bool bound = false;
        for (const auto& b : it->second.classes)
            if (iequals(b.class_name, d.class_name))
                bound = std::find(b.devices.begin(), b.devices.end(), d.name) != b.devices.end();
        if (!bound)
            broken("device " + d.name + " is not bound by server " + d.server_id);
    }
}

DatabaseStore::DatabaseStore(std::string path, const Clock& clock) : path_(std::move(path)), clock_(clock)
{
    ensure_self_records(state_);
}

void DatabaseStore::ensure_self_records(DatabaseState& st) const
{
    const auto id = key(kDatabaseServer);
    if (!st.servers.count(id))
        st.servers[id] = ServerRecord{kDatabaseServer, net::local_hostname(), 0, {{kDatabaseClass, {kDatabaseDevice}}}};
    auto dbdev = DeviceName::parse(kDatabaseDevice);
    if (!st.devices.count(dbdev))
        st.devices[dbdev] = DeviceRecord{kDatabaseDevice, kDatabaseClass, kDatabaseServer, false, "", 0};
    auto admin = DeviceName::parse(admin_device_name(kDatabaseServer));
    if (!st.devices.count(admin))
        st.devices[admin] = DeviceRecord{admin.str(), kAdminClass, kDatabaseServer, false, "", 0};
}

void DatabaseStore::load()
{
    DatabaseState st;
    if (!path_.empty()) {
        std::ifstream in(path_, std::ios::binary);
        if (in) {
            std::stringstream ss;
            ss << in.rdbuf();
            if (in.bad())
                throw_dev_failed(reason::IoFailure, "cannot read " + path_, kOrigin);
            st = parse_state(ss.str());
        }
    }
    ensure_self_records(st);
    try {
        st.check_integrity();
    } catch (const DevFailed& e) {
        throw_dev_failed(reason::CorruptFile, path_ + ": " + e.errors().front().description, kOrigin);
    }
    std::unique_lock l(mutex_);
    state_ = std::move(st);
}

void DatabaseStore::commit(DatabaseState next)
{
    next.check_integrity();
    if (!path_.empty())
        server::write_file_atomically(path_, serialize_state(next));
    state_ = std::move(next);
}

void DatabaseStore::add_server(const ServerRecord& server)
{
    check_server_id(server.server_id);
    if (iequals(server.server_id, kDatabaseServer))
        throw_dev_failed(reason::DeviceOwned, "the database server record cannot be replaced", kOrigin);
    if (server.host.empty())
        throw_dev_failed(reason::MalformedName, "server " + server.server_id + " has no host", kOrigin);
    const auto id = key(server.server_id);
    const auto admin = DeviceName::parse(admin_device_name(server.server_id));

    ServerRecord rec{server.server_id, server.host, server.level, {}};
    std::set<std::string> classes;
    std::set<DeviceName> wanted;
    for (const auto& b : server.classes) {
        if (b.class_name.empty() || iequals(b.class_name, kAdminClass))
            throw_dev_failed(reason::MalformedName, "class name '" + b.class_name + "' cannot be bound", kOrigin);
        if (b.devices.empty())
            throw_dev_failed(reason::ClassEmpty, "class " + b.class_name + " of " + server.server_id + " has no device",
                             kOrigin);
        if (!classes.insert(key(b.class_name)).second)
            throw_dev_failed(reason::MalformedArgument, "class " + b.class_name + " listed twice", kOrigin);
        ClassBinding nb{b.class_name, {}};
        for (const auto& d : b.devices) {
            auto n = DeviceName::parse(d);
            if (n == admin || !wanted.insert(n).second)
                throw_dev_failed(reason::MalformedArgument, "device " + n.str() + " listed twice", kOrigin);
            nb.devices.push_back(n.str());
        }
        rec.classes.push_back(std::move(nb));
    }

    std::unique_lock l(mutex_);
    auto next = state_;
    for (const auto& n : wanted) {
        auto it = next.devices.find(n);
        if (it != next.devices.end() && key(it->second.server_id) != id)
            throw_dev_failed(reason::DeviceOwned,
                             "device " + n.str() + " already belongs to server " + it->second.server_id, kOrigin);
    }
    // drop devices no longer bound
    for (auto it = next.devices.begin(); it != next.devices.end();) {
        if (key(it->second.server_id) == id && it->first != admin && !wanted.count(it->first))
            it = next.devices.erase(it);
        else
            ++it;
    }
    for (const auto& b : rec.classes) {
        for (const auto& d : b.devices) {
            auto& dr = next.devices[DeviceName::parse(d)];
            if (dr.name.empty())
                dr = DeviceRecord{d, b.class_name, server.server_id, false, "", 0};
            dr.class_name = b.class_name;
            dr.server_id = server.server_id;
        }
    }
    auto& ar = next.devices[admin];
    if (ar.name.empty())
        ar = DeviceRecord{admin.str(), kAdminClass, server.server_id, false, "", 0};
    ar.server_id = server.server_id;
    next.servers[id] = std::move(rec);
    commit(std::move(next));
}

void DatabaseStore::delete_server(const std::string& server_id)
{
    if (iequals(server_id, kDatabaseServer))
        throw_dev_failed(reason::DeviceOwned, "the database server record cannot be deleted", kOrigin);
    const auto id = key(server_id);
    std::unique_lock l(mutex_);
    if (!state_.servers.count(id))
        throw_dev_failed(reason::ServerNotDefined, "server " + server_id + " is not defined", kOrigin);
    auto next = state_;
    next.servers.erase(id);
    std::erase_if(next.devices, [&](const auto& kv) { return key(kv.second.server_id) == id; });
    commit(std::move(next));
}

ServerRecord DatabaseStore::get_server_info(const std::string& server_id) const
{
    std::shared_lock l(mutex_);
    auto it = state_.servers.find(key(server_id));
    if (it == state_.servers.end())
        throw_dev_failed(reason::ServerNotDefined, "server " + server_id + " is not defined", kOrigin);
    return it->second;
}

std::vector<std::string> DatabaseStore::get_device_list(const std::string& server_id,
                                                        const std::string& class_name) const
{
    std::shared_lock l(mutex_);
    auto it = state_.servers.find(key(server_id));
    if (it == state_.servers.end())
        return {};
    if (iequals(class_name, kAdminClass))
        return {admin_device_name(it->second.server_id)};
    for (const auto& b : it->second.classes)
        if (iequals(b.class_name, class_name))
            return b.devices;
    return {};
}

void DatabaseStore::export_device(const std::string& name, const std::string& endpoint, const std::string& server_id)
{
    const auto n = DeviceName::parse(name);
    net::Endpoint::parse(endpoint);
    std::unique_lock l(mutex_);
    auto it = state_.devices.find(n);
    if (it == state_.devices.end())
        not_defined(n.str());
    if (!iequals(it->second.server_id, server_id))
        throw_dev_failed(reason::DeviceOwned,
                         "device " + n.str() + " belongs to " + it->second.server_id + ", not " + server_id, kOrigin);
    auto next = state_;
    auto& d = next.devices[n];
    d.exported = true;
    d.endpoint = endpoint;
    d.export_time_ms = clock_.now_ms();
    commit(std::move(next));
}

void DatabaseStore::unexport_device(const std::string& name)
{
    const auto n = DeviceName::parse(name);
    std::unique_lock l(mutex_);
    auto it = state_.devices.find(n);
    if (it == state_.devices.end())
        not_defined(n.str());
    auto next = state_;
    next.devices[n].exported = false;
    commit(std::move(next));
}

void DatabaseStore::unexport_server(const std::string& server_id)
{
    const auto id = key(server_id);
    std::unique_lock l(mutex_);
    if (!state_.servers.count(id))
        throw_dev_failed(reason::ServerNotDefined, "server " + server_id + " is not defined", kOrigin);
    auto next = state_;
    for (auto& [n, d] : next.devices)
        if (key(d.server_id) == id)
            d.exported = false;
    commit(std::move(next));
}

DeviceRecord DatabaseStore::import_device(const std::string& name) const
{
    const auto n = DeviceName::parse(name);
    std::shared_lock l(mutex_);
    auto it = state_.devices.find(n);
    if (it == state_.devices.end())
        not_defined(n.str());
    return it->second;
}

std::vector<Property> DatabaseStore::get_property(const std::string& owner, const std::vector<std::string>& names) const
{
    check_owner(owner);
    std::shared_lock l(mutex_);
    auto it = state_.owners.find(key(owner));
    std::vector<Property> out;
    for (const auto& n : names) {
        Property p{n, {}};
        if (it != state_.owners.end())
            for (const auto& q : it->second.properties)
                if (iequals(q.name, n))
                    p.values = q.values;
        out.push_back(std::move(p));
    }
    return out;
}

void DatabaseStore::put_property(const std::string& owner, const std::vector<Property>& props)
{
    check_owner(owner);
    for (const auto& p : props)
        if (p.name.empty())
            throw_dev_failed(reason::MalformedName, "property name is empty", kOrigin);
    std::unique_lock l(mutex_);
    auto next = state_;
    auto& o = next.owners[key(owner)];
    if (o.name.empty())
        o.name = owner;
    for (const auto& p : props) {
        auto it = std::find_if(o.properties.begin(), o.properties.end(),
                               [&](const Property& q) { return iequals(q.name, p.name); });
        if (p.values.empty()) {
            if (it != o.properties.end())
                o.properties.erase(it);
        } else if (it != o.properties.end()) {
            it->values = p.values;
        } else {
            o.properties.push_back(p);
        }
    }
    if (o.properties.empty())
        next.owners.erase(key(owner));
    commit(std::move(next));
}

void DatabaseStore::delete_property(const std::string& owner, const std::vector<std::string>& names)
{
    check_owner(owner);
    std::unique_lock l(mutex_);
    auto it = state_.owners.find(key(owner));
    if (it == state_.owners.end())
        return;
    auto next = state_;
    auto& o = next.owners[key(owner)];
    for (const auto& n : names)
        std::erase_if(o.properties, [&](const Property& q) { return iequals(q.name, n); });
    if (o.properties.empty())
        next.owners.erase(key(owner));
    if (next == state_)
        return;
    commit(std::move(next));
}

std::vector<std::string> DatabaseStore::get_property_list(const std::string& owner) const
{
    check_owner(owner);
    std::shared_lock l(mutex_);
    std::vector<std::string> out;
    auto it = state_.owners.find(key(owner));
    if (it != state_.owners.end())
        for (const auto& p : it->second.properties)
            out.push_back(p.name);
    return out;
}

std::vector<std::string> DatabaseStore::browse_devices(const std::string& pattern) const
{
    check_pattern(pattern, 3, "device");
    std::vector<std::string> parts;
    if (pattern == "*") {
        parts = {"*", "*", "*"};
    } else {
        std::size_t start = 0;
        for (std::size_t i = 0; i <= pattern.size(); ++i)
            if (i == pattern.size() || pattern[i] == '/') {
                parts.push_back(pattern.substr(start, i - start));
                start = i + 1;
            }
    }
    std::shared_lock l(mutex_);
    std::vector<std::string> out;
    for (const auto& [n, d] : state_.devices)
        if (glob_match(parts[0], n.domain()) && glob_match(parts[1], n.family()) && glob_match(parts[2], n.member()))
            out.push_back(n.str());
    return out;
}

std::vector<std::string> DatabaseStore::get_server_list(const std::string& pattern) const
{
    check_pattern(pattern, 0, "server");
    std::shared_lock l(mutex_);
    std::vector<std::string> out;
    for (const auto& [k, s] : state_.servers)
        if (glob_match(pattern, s.server_id))
            out.push_back(s.server_id);
    return out;
}

std::vector<std::string> DatabaseStore::get_host_list(const std::string& pattern) const
{
    check_pattern(pattern, 1, "host");
    std::shared_lock l(mutex_);
    std::set<std::string> hosts;
    for (const auto& [k, s] : state_.servers)
        if (glob_match(pattern, s.host))
            hosts.insert(s.host);
    return {hosts.begin(), hosts.end()};
}

std::vector<std::string> DatabaseStore::get_class_list(const std::string& pattern) const
{
    check_pattern(pattern, 1, "class");
    std::shared_lock l(mutex_);
    std::map<std::string, std::string> classes;
    for (const auto& [n, d] : state_.devices)
        if (glob_match(pattern, d.class_name))
            classes.emplace(key(d.class_name), d.class_name);
    std::vector<std::string> out;
    for (const auto& [k, v] : classes)
        out.push_back(v);
    return out;
}

DatabaseState DatabaseStore::snapshot() const
{
    std::shared_lock l(mutex_);
    return state_;
}

} // namespace tng::db
