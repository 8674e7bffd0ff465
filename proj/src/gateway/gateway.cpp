#include "tng/gateway/gateway.hpp"

#include "tng/astor/fleet.hpp"
#include "tng/core/log.hpp"
#include "tng/core/reasons.hpp"
#include "tng/json/value_json.hpp"

#include <httplib.h>

namespace tng::gateway {

using nlohmann::json;

namespace {

constexpr const char* kDev = R"(([^/]+/[^/]+/[^/]+))";
constexpr const char* kSrv = R"(([^/]+/[^/]+))";

std::string pattern(std::initializer_list<std::string> parts)
{
    std::string s = "/api/v1";
    for (const auto& p : parts)
        s += "/" + p;
    return s;
}

void send_json(httplib::Response& res, int status, const json& body)
{
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

json body_json(const httplib::Request& req)
{
    if (req.body.empty())
        return json();
    try {
        return json::parse(req.body);
    } catch (const json::exception& e) {
        throw DevFailed(reason::BadJson, std::string("request body is not JSON: ") + e.what(), "gateway");
    }
}

json record_json(const db::DeviceRecord& r)
{
    return {{"name", r.name},
            {"class", r.class_name},
            {"server", r.server_id},
            {"exported", r.exported},
            {"endpoint", r.endpoint},
            {"export_time_ms", r.export_time_ms}};
}

json record_json(const db::ServerRecord& r)
{
    auto classes = json::array();
    for (const auto& c : r.classes)
        classes.push_back({{"class", c.class_name}, {"devices", c.devices}});
    return {{"server_id", r.server_id}, {"host", r.host}, {"level", r.level}, {"classes", std::move(classes)}};
}

db::ServerRecord server_from_json(const std::string& id, const json& j)
{
    try {
        db::ServerRecord r{id, j.at("host").get<std::string>(), j.value("level", 0u), {}};
        for (const auto& c : j.value("classes", json::array()))
            r.classes.push_back({c.at("class").get<std::string>(), c.at("devices").get<std::vector<std::string>>()});
        return r;
    } catch (const json::exception& e) {
        throw DevFailed(reason::BadJson, std::string("bad server record: ") + e.what(), "gateway");
    }
}

} // namespace

ProxyPool::ProxyPool(std::shared_ptr<client::Database> db, client::ProxyOptions options,
                     std::chrono::milliseconds idle)
    : db_(std::move(db)), options_(options), idle_(idle)
{
}

std::shared_ptr<client::DeviceProxy> ProxyPool::acquire(const std::string& device, Clock::time_point now)
{
    sweep(now);
    const auto key = to_lower(device);
    std::lock_guard l(mutex_);
    auto& e = entries_[key];
    if (!e.proxy)
        e.proxy = std::make_shared<client::DeviceProxy>(device, db_, options_);
    e.last_used = now;
    return e.proxy;
}

std::size_t ProxyPool::sweep(Clock::time_point now)
{
    std::lock_guard l(mutex_);
    return std::erase_if(entries_, [&](const auto& kv) { return now - kv.second.last_used > idle_; });
}

std::size_t ProxyPool::size() const
{
    std::lock_guard l(mutex_);
    return entries_.size();
}

int http_status(const DevFailed& e, Route route)
{
    auto any = [&](std::initializer_list<std::string_view> rs) {
        return std::any_of(rs.begin(), rs.end(), [&](auto r) { return e.has_reason(r); });
    };
    if (any({reason::BadJson, reason::MalformedName, reason::MalformedPattern, reason::MalformedArgument}))
        return 400;
    // wraps whatever made the Starter unreachable, including an undefined one
    if (any({reason::StarterUnreachable}))
        return 502;
    if (any({reason::AttrNotWritable}))
        return 403;
    if (any({reason::DeviceNotDefined, reason::ServerNotDefined, reason::UnknownServer, reason::CommandNotFound,
             reason::AttrNotFound, reason::DeviceNotFound}))
        return 404;
    if (any({reason::DeviceUnreachable, reason::DeviceTimedOut, reason::DbUnreachable}))
        return route == Route::Servers ? 502 : 504;
    return 502;
}

class Gateway::Impl {
public:
    Impl(Gateway& g) : g_(g) { routes(); }

    httplib::Server http;

private:
    using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

    // Runs a handler, turning DevFailed into the mapped status and an error array.
    Handler guarded(Route route, Handler h)
    {
        return [route, h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
            try {
                h(req, res);
            } catch (const DevFailed& e) {
                send_json(res, http_status(e, route), {{"errors", jsonmap::to_json(e.errors())}});
            } catch (const std::exception& e) {
                send_json(res, 500,
                          {{"errors", jsonmap::to_json(DevErrorList{DevError{std::string(reason::GatewayInternal), e.what(),
                                                                            "gateway", ErrSeverity::Err}})}});
            }
        };
    }

    client::Database& db() { return *g_.db_; }
    std::shared_ptr<client::DeviceProxy> proxy(const std::string& dev) { return g_.pool_.acquire(dev); }
    astor::Fleet fleet()
    {
        astor::FleetOptions o;
        o.server_timeout = g_.options_.server_action_timeout;
        return astor::Fleet(g_.db_, o);
    }

    void routes()
    {
        auto get = [&](const std::string& p, Route r, Handler h) { http.Get(p, guarded(r, std::move(h))); };
        auto post = [&](const std::string& p, Route r, Handler h) { http.Post(p, guarded(r, std::move(h))); };
        auto put = [&](const std::string& p, Route r, Handler h) { http.Put(p, guarded(r, std::move(h))); };
        auto del = [&](const std::string& p, Route r, Handler h) { http.Delete(p, guarded(r, std::move(h))); };
        auto dev = Route::Device;
        auto dbr = Route::Database;
        auto srv = Route::Servers;

        http.Get("/api/v1/spec", [](const httplib::Request&, httplib::Response& res) {
            res.set_content(openapi_document(), "application/json");
        });

        // devices
        get(pattern({"devices"}), dev, [this](auto&, auto& res) { send_json(res, 200, db().browse_devices("*")); });
        get(pattern({"devices", kDev}), dev, [this](auto& req, auto& res) {
            auto p = proxy(req.matches[1]);
            send_json(res, 200,
                      {{"name", p->name().str()}, {"state", std::string(to_string(p->state()))}, {"status", p->status()}});
        });
        get(pattern({"devices", kDev, "commands"}), dev, [this](auto& req, auto& res) {
            auto out = json::array();
            for (const auto& c : proxy(req.matches[1])->command_list_query())
                out.push_back(jsonmap::to_json(c));
            send_json(res, 200, out);
        });
        get(pattern({"devices", kDev, "commands", "([^/]+)"}), dev, [this](auto& req, auto& res) {
            send_json(res, 200, jsonmap::to_json(proxy(req.matches[1])->command_query(req.matches[2].str())));
        });
        post(pattern({"devices", kDev, "commands", "([^/]+)"}), dev, [this](auto& req, auto& res) {
            auto p = proxy(req.matches[1]);
            const std::string cmd = req.matches[2];
            auto body = body_json(req);
            TangoValue argin;
            if (body.is_object() && body.contains("type"))
                argin = jsonmap::value_from_json(body);
            else if (!body.is_null())
                argin = jsonmap::value_from_json(body, p->command_query(cmd).in_type);
            auto reply = p->command_inout_reply(cmd, argin);
            res.set_header("X-Data-Source", std::string(to_string(reply.source)));
            send_json(res, 200, jsonmap::to_json(reply.value));
        });
        get(pattern({"devices", kDev, "attributes"}), dev, [this](auto& req, auto& res) {
            auto out = json::array();
            for (const auto& c : proxy(req.matches[1])->get_attribute_config())
                out.push_back(jsonmap::to_json(c));
            send_json(res, 200, out);
        });
        get(pattern({"devices", kDev, "attributes", "([^/]+)"}), dev, [this](auto& req, auto& res) {
            send_json(res, 200, jsonmap::to_json(proxy(req.matches[1])->read_attribute(req.matches[2].str())));
        });
        put(pattern({"devices", kDev, "attributes", "([^/]+)"}), dev, [this](auto& req, auto& res) {
            auto p = proxy(req.matches[1]);
            auto cfg = p->get_attribute_config({req.matches[2].str()}).at(0);
            p->write_attribute(jsonmap::attribute_value_from_json(body_json(req), cfg));
            res.status = 204;
        });

        // database
        get(pattern({"db", "devices"}), dbr, [this](auto&, auto& res) { send_json(res, 200, db().browse_devices("*")); });
        get(pattern({"db", "browse"}), dbr, [this](auto& req, auto& res) {
            send_json(res, 200, db().browse_devices(req.has_param("pattern") ? req.get_param_value("pattern") : "*"));
        });
        get(pattern({"db", "devices", kDev}), dbr,
            [this](auto& req, auto& res) { send_json(res, 200, record_json(db().import_device(req.matches[1]))); });
        get(pattern({"db", "devices", kDev, "properties"}), dbr, [this](auto& req, auto& res) {
            const std::string owner = req.matches[1];
            auto out = json::array();
            auto names = db().get_property_list(owner);
            if (!names.empty())
                for (const auto& p : db().get_property(owner, names))
                    out.push_back({{"name", p.name}, {"values", p.values}});
            send_json(res, 200, out);
        });
        get(pattern({"db", "devices", kDev, "properties", "([^/]+)"}), dbr, [this](auto& req, auto& res) {
            auto props = db().get_property(req.matches[1], {req.matches[2].str()});
            auto values = props.empty() ? std::vector<std::string>{} : props.front().values;
            send_json(res, 200, {{"name", req.matches[2].str()}, {"values", values}});
        });
        put(pattern({"db", "devices", kDev, "properties", "([^/]+)"}), dbr, [this](auto& req, auto& res) {
            auto body = body_json(req);
            if (!body.is_object() || !body.contains("values") || !body["values"].is_array())
                throw DevFailed(reason::BadJson, "expected {\"values\": [strings]}", "gateway");
            std::vector<std::string> values;
            for (const auto& v : body["values"]) {
                if (!v.is_string())
                    throw DevFailed(reason::BadJson, "property values are strings", "gateway");
                values.push_back(v.template get<std::string>());
            }
            db().put_property(req.matches[1], {{req.matches[2].str(), values}});
            res.status = 204;
        });
        del(pattern({"db", "devices", kDev, "properties", "([^/]+)"}), dbr, [this](auto& req, auto& res) {
            db().delete_property(req.matches[1], {req.matches[2].str()});
            res.status = 204;
        });
        get(pattern({"db", "servers"}), dbr, [this](auto&, auto& res) { send_json(res, 200, db().get_server_list("*")); });
        get(pattern({"db", "servers", kSrv}), dbr,
            [this](auto& req, auto& res) { send_json(res, 200, record_json(db().get_server_info(req.matches[1]))); });
        put(pattern({"db", "servers", kSrv}), dbr, [this](auto& req, auto& res) {
            db().add_server(server_from_json(req.matches[1], body_json(req)));
            res.status = 204;
        });
        del(pattern({"db", "servers", kSrv}), dbr, [this](auto& req, auto& res) {
            db().delete_server(req.matches[1]);
            res.status = 204;
        });
        get(pattern({"db", "hosts"}), dbr, [this](auto&, auto& res) { send_json(res, 200, db().get_host_list("*")); });
        get(pattern({"db", "classes"}), dbr, [this](auto&, auto& res) { send_json(res, 200, db().get_class_list("*")); });

        // fleet
        get(pattern({"servers"}), srv, [this](auto&, auto& res) { send_json(res, 200, astor::to_json(fleet().status())); });
        get(pattern({"servers", kSrv}), srv, [this](auto& req, auto& res) {
            const std::string id = req.matches[1];
            for (const auto& h : fleet().status().hosts)
                for (const auto& s : h.servers)
                    if (iequals(s.server_id, id)) {
                        send_json(res, 200,
                                  {{"server_id", s.server_id},
                                   {"host", h.host},
                                   {"level", s.level},
                                   {"observed", s.observed},
                                   {"devices", s.devices}});
                        return;
                    }
            throw DevFailed(reason::UnknownServer, "server " + id + " is not registered", "gateway");
        });
        post(pattern({"servers", kSrv, "(start|stop)"}), srv, [this](auto& req, auto& res) {
            const std::string id = req.matches[1];
            fleet().issue(id, req.matches[2] == "start" ? astor::Action::Start : astor::Action::Stop);
            send_json(res, 202, {{"server_id", id}, {"action", req.matches[2].str()}, {"poll", pattern({"servers", id})}});
        });

        if (!g_.options_.static_dir.empty())
            http.set_mount_point("/", g_.options_.static_dir);
    }

    Gateway& g_;
};

Gateway::Gateway(std::shared_ptr<client::Database> db, GatewayOptions options)
    : db_(std::move(db)), options_(std::move(options)), pool_(db_, options_.proxy, options_.idle_eviction),
      impl_(std::make_unique<Impl>(*this))
{
}

Gateway::~Gateway() { stop(); }

std::uint16_t Gateway::start(const std::string& host, std::uint16_t port)
{
    int bound = port == 0 ? impl_->http.bind_to_any_port(host) : (impl_->http.bind_to_port(host, port) ? port : -1);
    if (bound <= 0)
        throw DevFailed(reason::IoFailure, "cannot listen on " + host + ":" + std::to_string(port), "gateway");
    thread_ = std::thread([this] { impl_->http.listen_after_bind(); });
    impl_->http.wait_until_ready();
    log_info("gateway", "listening on " + host + ":" + std::to_string(bound));
    return static_cast<std::uint16_t>(bound);
}

void Gateway::serve(const std::string& host, std::uint16_t port)
{
    if (!impl_->http.listen(host, port))
        throw DevFailed(reason::IoFailure, "cannot listen on " + host + ":" + std::to_string(port), "gateway");
}

void Gateway::stop()
{
    impl_->http.stop();
    if (thread_.joinable())
        thread_.join();
}

} // namespace tng::gateway
