#include "tng/client/device_proxy.hpp"

#include "tng/client/database.hpp"
#include "tng/core/reasons.hpp"

#include <condition_variable>
#include <cstdlib>
#include <deque>
#include <map>
#include <thread>

namespace tng::client {

using wire::Bytes;
using wire::OpCode;

using Outcome = std::variant<Bytes, DevErrorList>;
using Done = std::function<void(Outcome)>;

namespace {

DevErrorList unreachable(const DeviceName& name, const std::string& why)
{
    return {DevError{std::string(reason::DeviceUnreachable), "device " + name.str() + " unreachable: " + why,
                     "DeviceProxy", ErrSeverity::Err}};
}

} // namespace

// One TCP connection with a reader thread demultiplexing replies by request id.
class Connection {
public:
    enum class Sent { Written, NotWritten };

    Connection(net::Socket socket, std::string device) : socket_(std::move(socket)), device_(std::move(device))
    {
        reader_ = std::thread([this] { reader_loop(); });
    }

    ~Connection()
    {
        close();
        if (reader_.joinable()) {
            if (reader_.get_id() == std::this_thread::get_id())
                reader_.detach();
            else
                reader_.join();
        }
    }

    bool alive() const noexcept { return alive_.load(); }

    Sent send(OpCode op, const Bytes& payload, Done done)
    {
        std::lock_guard wl(write_mutex_);
        if (!alive_)
            return Sent::NotWritten;
        wire::RequestEnvelope env{next_id_++, static_cast<std::uint8_t>(op), device_, payload};
        const auto id = env.request_id;
        Bytes frame;
        try {
            frame = wire::write_frame(wire::encode_request(env));
        } catch (const DevFailed& e) {
            done(e.errors());
            return Sent::Written;
        }
        {
            std::lock_guard pl(pending_mutex_);
            pending_.emplace(id, std::move(done));
        }
        try {
            socket_.write_all(frame);
        } catch (const DevFailed&) {
            Done undone;
            {
                std::lock_guard pl(pending_mutex_);
                auto it = pending_.find(id);
                if (it != pending_.end()) {
                    undone = std::move(it->second);
                    pending_.erase(it);
                }
            }
            alive_ = false;
            socket_.shutdown();
            // Reader may already have failed it; only a still-registered request counts as unwritten.
            return undone ? Sent::NotWritten : Sent::Written;
        }
        return Sent::Written;
    }

    void close()
    {
        alive_ = false;
        socket_.shutdown();
    }

private:
    void reader_loop()
    {
        std::string why = "connection closed by peer";
        try {
            while (auto body = wire::read_frame(socket_)) {
                auto reply = wire::decode_reply(*body);
                Done done;
                {
                    std::lock_guard pl(pending_mutex_);
                    auto it = pending_.find(reply.request_id);
                    if (it == pending_.end())
                        continue;
                    done = std::move(it->second);
                    pending_.erase(it);
                }
                if (reply.status == wire::ReplyStatus::Ok) {
                    done(std::move(reply.payload));
                } else {
                    wire::Reader r(reply.payload);
                    done(wire::decode_errors(r));
                }
            }
        } catch (const DevFailed& e) {
            why = e.what();
        }
        alive_ = false;
        socket_.shutdown();
        std::map<std::uint32_t, Done> failed;
        {
            std::lock_guard pl(pending_mutex_);
            failed.swap(pending_);
        }
        auto name = DeviceName::is_valid(device_) ? DeviceName::parse(device_) : DeviceName();
        for (auto& [id, done] : failed)
            done(unreachable(name, why));
    }

    net::Socket socket_;
    std::string device_;
    std::atomic<bool> alive_{true};
    std::mutex write_mutex_;
    std::uint32_t next_id_ = 1;
    std::mutex pending_mutex_;
    std::map<std::uint32_t, Done> pending_;
    std::thread reader_;
};

// FIFO queue of callbacks run on one dedicated thread.
class DeviceProxy::Delivery {
public:
    Delivery() : thread_([this] { run(); }) {}

    ~Delivery()
    {
        {
            std::lock_guard l(mutex_);
            stopping_ = true;
        }
        cv_.notify_all();
        thread_.join();
    }

    void post(std::function<void()> fn)
    {
        {
            std::lock_guard l(mutex_);
            queue_.push_back(std::move(fn));
        }
        cv_.notify_one();
    }

private:
    void run()
    {
        for (;;) {
            std::function<void()> fn;
            {
                std::unique_lock l(mutex_);
                cv_.wait(l, [&] { return stopping_ || !queue_.empty(); });
                if (queue_.empty())
                    return;
                fn = std::move(queue_.front());
                queue_.pop_front();
            }
            try {
                fn();
            } catch (...) {
                // a throwing user callback must not kill delivery
            }
        }
    }

    std::mutex mutex_;
    std::condition_variable cv_;
    std::deque<std::function<void()>> queue_;
    bool stopping_ = false;
    std::thread thread_;
};

namespace {

// Splits "host:port/d/f/m" into endpoint + name; plain names have no endpoint.
std::pair<std::optional<net::Endpoint>, DeviceName> split_target(std::string_view text)
{
    auto first_slash = text.find('/');
    auto colon = text.find(':');
    if (colon != std::string_view::npos && first_slash != std::string_view::npos && colon < first_slash)
        return {net::Endpoint::parse(text.substr(0, first_slash)), DeviceName::parse(text.substr(first_slash + 1))};
    return {std::nullopt, DeviceName::parse(text)};
}

} // namespace

DeviceProxy::DeviceProxy(std::string_view name, ProxyOptions options) : DeviceProxy(name, nullptr, options) {}

DeviceProxy::DeviceProxy(std::string_view name, std::shared_ptr<Database> db, ProxyOptions options)
    : db_(std::move(db)), options_(options)
{
    auto [ep, parsed] = split_target(name);
    fixed_endpoint_ = std::move(ep);
    name_ = std::move(parsed);
    if (fixed_endpoint_)
        endpoint_ = fixed_endpoint_;
}

DeviceProxy::~DeviceProxy()
{
    std::shared_ptr<Connection> conn;
    {
        std::lock_guard l(mutex_);
        conn = std::move(connection_);
    }
    if (conn)
        conn->close();
    conn.reset();
    delivery_.reset();
}

bool DeviceProxy::connected() const
{
    std::lock_guard l(mutex_);
    return connection_ && connection_->alive();
}

net::Endpoint DeviceProxy::endpoint()
{
    std::lock_guard l(mutex_);
    if (!endpoint_)
        resolve();
    return *endpoint_;
}

void DeviceProxy::resolve()
{
    if (fixed_endpoint_) {
        endpoint_ = fixed_endpoint_;
        return;
    }
    if (!db_)
        db_ = default_database();
    auto rec = db_->import_device(name_.str());
    if (!rec.exported || rec.endpoint.empty())
        throw DevFailed(unreachable(name_, "not exported"));
    endpoint_ = net::Endpoint::parse(rec.endpoint);
}

std::shared_ptr<Connection> DeviceProxy::ensure_connection(bool force_resolve)
{
    std::lock_guard l(mutex_);
    if (connection_ && connection_->alive() && !force_resolve)
        return connection_;
    connection_.reset();
    if (force_resolve || !endpoint_)
        resolve();
    try {
        connection_ = std::make_shared<Connection>(net::Socket::connect(*endpoint_, options_.connect_timeout), name_.str());
    } catch (const DevFailed& e) {
        throw DevFailed(unreachable(name_, e.errors().front().description));
    }
    return connection_;
}

void DeviceProxy::submit(OpCode op, Bytes payload, Done done)
{
    DevErrorList last;
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::shared_ptr<Connection> conn;
        try {
            conn = ensure_connection(attempt > 0);
        } catch (const DevFailed& e) {
            if (e.has_reason(reason::DeviceNotDefined) || e.has_reason(reason::MalformedName)) {
                done(e.errors());
                return;
            }
            last = e.errors();
            if (!fixed_endpoint_ || attempt == 0)
                continue;
            break;
        }
        if (conn->send(op, payload, done) == Connection::Sent::Written)
            return;
        last = unreachable(name_, "request could not be sent");
        std::lock_guard l(mutex_);
        if (connection_ == conn)
            connection_.reset();
    }
    done(std::move(last));
}

Bytes DeviceProxy::call(OpCode op, Bytes payload)
{
    struct State {
        std::mutex m;
        std::condition_variable cv;
        std::optional<Outcome> outcome;
    };
    auto st = std::make_shared<State>();
    submit(op, std::move(payload), [st](Outcome o) {
        {
            std::lock_guard l(st->m);
            st->outcome = std::move(o);
        }
        st->cv.notify_all();
    });
    std::unique_lock l(st->m);
    if (!st->cv.wait_for(l, options_.timeout, [&] { return st->outcome.has_value(); }))
        throw DevFailed(reason::DeviceTimedOut,
                        "no reply from " + name_.str() + " within " + std::to_string(options_.timeout.count()) + " ms",
                        std::string(wire::to_string(op)));
    if (auto* errs = std::get_if<DevErrorList>(&*st->outcome))
        throw DevFailed(*errs);
    return std::get<Bytes>(std::move(*st->outcome));
}

CommandReply DeviceProxy::command_inout_reply(std::string_view command, const TangoValue& argin)
{
    auto reply = call(OpCode::CommandInout, wire::encode_command_request({std::string(command), argin}));
    return wire::decode_command_reply(reply);
}

TangoValue DeviceProxy::command_inout(std::string_view command, const TangoValue& argin)
{
    return command_inout_reply(command, argin).value;
}

void DeviceProxy::command_inout_async(std::string_view command, const TangoValue& argin, CommandCallback callback)
{
    {
        std::lock_guard l(mutex_);
        if (!delivery_)
            delivery_ = std::make_unique<Delivery>();
    }
    Delivery* delivery = delivery_.get();
    std::string cmd(command);
    Bytes payload;
    try {
        payload = wire::encode_command_request({cmd, argin});
    } catch (const DevFailed& e) {
        delivery->post([callback, cmd, errs = e.errors()] { callback(AsyncResult{cmd, errs}); });
        return;
    }
    submit(OpCode::CommandInout, std::move(payload), [delivery, callback, cmd](Outcome o) {
        delivery->post([callback, cmd, o = std::move(o)] {
            AsyncResult r{cmd, DevErrorList{}};
            if (const auto* b = std::get_if<Bytes>(&o)) {
                try {
                    r.result = wire::decode_command_reply(*b).value;
                } catch (const DevFailed& e) {
                    r.result = e.errors();
                }
            } else {
                r.result = std::get<DevErrorList>(o);
            }
            callback(r);
        });
    });
}

std::vector<AttrReadResult> DeviceProxy::read_attributes(const std::vector<std::string>& names)
{
    Bytes payload;
    wire::Writer w(payload);
    wire::encode_strings(w, names);
    auto reply = call(OpCode::ReadAttributes, std::move(payload));
    wire::Reader r(reply);
    auto out = wire::decode_read_results(r);
    r.expect_end("read_attributes reply");
    return out;
}

AttributeValue DeviceProxy::read_attribute(const std::string& name)
{
    auto results = read_attributes({name});
    if (results.size() != 1)
        throw_dev_failed(reason::BadValue, "expected one attribute result", "read_attribute");
    if (auto* errs = std::get_if<DevErrorList>(&results[0]))
        throw DevFailed(*errs);
    return std::get<AttributeValue>(std::move(results[0]));
}

void DeviceProxy::write_attributes(const std::vector<AttributeValue>& values)
{
    Bytes payload;
    wire::Writer w(payload);
    w.count(values.size());
    for (const auto& v : values)
        wire::encode_attribute_value(w, v);
    call(OpCode::WriteAttributes, std::move(payload));
}

std::vector<AttributeConfig> DeviceProxy::get_attribute_config(const std::vector<std::string>& names)
{
    Bytes payload;
    wire::Writer w(payload);
    wire::encode_strings(w, names);
    auto reply = call(OpCode::GetAttributeConfig, std::move(payload));
    wire::Reader r(reply);
    const auto n = r.count(1);
    std::vector<AttributeConfig> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(wire::decode_attribute_config(r));
    r.expect_end("get_attribute_config reply");
    return out;
}

void DeviceProxy::set_attribute_config(const std::vector<AttributeConfig>& configs)
{
    Bytes payload;
    wire::Writer w(payload);
    w.count(configs.size());
    for (const auto& c : configs)
        wire::encode_attribute_config(w, c);
    call(OpCode::SetAttributeConfig, std::move(payload));
}

std::vector<CommandInfo> DeviceProxy::command_list_query()
{
    auto reply = call(OpCode::CommandListQuery, {});
    wire::Reader r(reply);
    const auto n = r.count(1);
    std::vector<CommandInfo> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(wire::decode_command_info(r));
    r.expect_end("command_list_query reply");
    return out;
}

CommandInfo DeviceProxy::command_query(std::string_view command)
{
    Bytes payload;
    wire::Writer w(payload);
    w.str(command);
    auto reply = call(OpCode::CommandQuery, std::move(payload));
    wire::Reader r(reply);
    auto out = wire::decode_command_info(r);
    r.expect_end("command_query reply");
    return out;
}

std::int64_t DeviceProxy::ping()
{
    auto t0 = std::chrono::steady_clock::now();
    call(OpCode::Ping, {});
    return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count();
}

DeviceState DeviceProxy::state()
{
    auto reply = call(OpCode::State, {});
    wire::Reader r(reply);
    auto code = r.u8();
    r.expect_end("state reply");
    if (code >= kDeviceStateCount)
        throw_dev_failed(reason::BadValue, "state code out of range", "DeviceProxy::state");
    return static_cast<DeviceState>(code);
}

std::string DeviceProxy::status()
{
    auto reply = call(OpCode::Status, {});
    wire::Reader r(reply);
    auto s = r.str();
    r.expect_end("status reply");
    return s;
}

std::shared_ptr<Database> default_database()
{
    static std::mutex m;
    static std::map<std::string, std::shared_ptr<Database>> cache;
    const char* host = std::getenv("TNG_HOST");
    std::lock_guard l(m);
    const std::string key = host ? host : "";
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    auto db = Database::from_env();
    cache.emplace(key, db);
    return db;
}

} // namespace tng::client
