#include "tng/server/device_server.hpp"

#include "tng/core/log.hpp"
#include "tng/core/reasons.hpp"
#include "tng/db/records.hpp"

#include <algorithm>
#include <charconv>
#include <condition_variable>
#include <deque>

namespace tng::server {

using polling::PollKind;
using wire::Bytes;
using wire::OpCode;

struct DeviceServer::Slot {
    DeviceClass* cls = nullptr;
    std::unique_ptr<Device> device;
    std::mutex exec;

    std::mutex config_mutex;
    std::vector<AttributeConfig> attr_configs;

    polling::PollCache cache;
    std::unique_ptr<polling::DevicePoller> poller;

    mutable std::mutex counts_mutex;
    std::map<std::string, std::uint64_t> counts;

    void count(const std::string& command)
    {
        std::lock_guard l(counts_mutex);
        ++counts[to_lower(command)];
    }
};

namespace {

constexpr const char* kTag = "server";

void fill_origin(DevErrorList& errs, const std::string& origin)
{
    for (auto& e : errs)
        if (e.origin.empty())
            e.origin = origin;
}

DevErrorList errors_of_current_exception(std::string_view fallback_reason, const std::string& origin)
{
    try {
        throw;
    } catch (const DevFailed& e) {
        auto errs = e.errors();
        fill_origin(errs, origin);
        return errs;
    } catch (const std::exception& e) {
        return {DevError{std::string(fallback_reason), e.what(), origin, ErrSeverity::Err}};
    } catch (...) {
        return {DevError{std::string(fallback_reason), "unknown exception", origin, ErrSeverity::Err}};
    }
}

bool same_shape(const AttributeConfig& a, const AttributeConfig& b)
{
    return iequals(a.name, b.name) && a.writable == b.writable && a.element_type == b.element_type &&
           a.format == b.format && a.max_dim_x == b.max_dim_x && a.max_dim_y == b.max_dim_y;
}

// Administration device present in every server.
class AdminDevice final : public Device {
public:
    using Device::Device;
    void init_device() override { set_state(DeviceState::ON); }
};

} // namespace

// One client connection: a reader thread plus one worker lane per (connection,
// device) so requests to a device keep their order while devices run in parallel.
class ServerConnection {
public:
    ServerConnection(DeviceServer& server, net::Socket socket) : server_(server), socket_(std::move(socket)) {}

    ~ServerConnection()
    {
        close();
        join();
    }

    void start()
    {
        reader_ = std::thread([this] { reader_loop(); });
    }

    void close() noexcept { socket_.shutdown(); }

    void join()
    {
        if (reader_.joinable())
            reader_.join();
    }

    bool finished() const noexcept { return finished_.load(); }

private:
    struct Lane {
        std::mutex m;
        std::condition_variable cv;
        std::deque<wire::RequestEnvelope> queue;
        bool stopping = false;
        std::thread thread;
    };

    void reader_loop()
    {
        try {
            while (auto body = wire::read_frame(socket_)) {
                auto req = wire::decode_request(*body);
                auto& lane = lane_for(to_lower(req.device));
                {
                    std::lock_guard l(lane.m);
                    lane.queue.push_back(std::move(req));
                }
                lane.cv.notify_one();
            }
        } catch (const DevFailed& e) {
            log_debug(kTag, std::string("connection dropped: ") + e.what());
        }
        socket_.shutdown();
        for (auto& [name, lane] : lanes_) {
            {
                std::lock_guard l(lane->m);
                lane->stopping = true;
            }
            lane->cv.notify_all();
        }
        for (auto& [name, lane] : lanes_)
            lane->thread.join();
        finished_ = true;
    }

    Lane& lane_for(const std::string& device)
    {
        auto& lane = lanes_[device];
        if (!lane) {
            lane = std::make_unique<Lane>();
            Lane* raw = lane.get();
            lane->thread = std::thread([this, raw] { lane_loop(*raw); });
        }
        return *lane;
    }

    void lane_loop(Lane& lane)
    {
        for (;;) {
            wire::RequestEnvelope req;
            {
                std::unique_lock l(lane.m);
                lane.cv.wait(l, [&] { return lane.stopping || !lane.queue.empty(); });
                if (lane.stopping)
                    return;
                req = std::move(lane.queue.front());
                lane.queue.pop_front();
            }
            bool drop = false;
            auto reply = server_.handle(req, drop);
            if (drop) {
                socket_.shutdown();
                return;
            }
            try {
                auto frame = wire::write_frame(wire::encode_reply(reply));
                std::lock_guard wl(write_mutex_);
                socket_.write_all(frame);
            } catch (const DevFailed& e) {
                log_debug(kTag, std::string("reply not sent: ") + e.what());
                socket_.shutdown();
                return;
            }
        }
    }

    DeviceServer& server_;
    net::Socket socket_;
    std::mutex write_mutex_;
    std::map<std::string, std::unique_ptr<Lane>> lanes_; // reader thread only
    std::thread reader_;
    std::atomic<bool> finished_{false};
};

DeviceServer::DeviceServer(std::string server_id, std::shared_ptr<PropertyStore> properties, const Clock& clock)
    : server_id_(std::move(server_id)), properties_(std::move(properties)), clock_(clock)
{
}

DeviceServer::~DeviceServer()
{
    shutdown();
}

void DeviceServer::register_class(std::shared_ptr<DeviceClass> cls)
{
    if (find_class(cls->name()))
        throw_dev_failed(reason::DuplicateName, "class " + cls->name() + " registered twice", "DeviceServer");
    classes_.push_back(std::move(cls));
}

DeviceClass* DeviceServer::find_class(std::string_view name) const
{
    for (const auto& c : classes_)
        if (iequals(c->name(), name))
            return c.get();
    if (admin_class_ && iequals(admin_class_->name(), name))
        return admin_class_.get();
    return nullptr;
}

Device& DeviceServer::add_device(std::string_view class_name, std::string_view name)
{
    auto* cls = find_class(class_name);
    if (!cls)
        throw_dev_failed(reason::MalformedArgument, "class " + std::string(class_name) + " is not registered",
                         "DeviceServer::add_device");
    return add_device(*cls, name);
}

Device& DeviceServer::add_device(DeviceClass& cls, std::string_view name)
{
    return create(cls, DeviceName::parse(name));
}

Device& DeviceServer::create(DeviceClass& cls, const DeviceName& name)
{
    {
        std::shared_lock l(table_mutex_);
        if (by_name_.count(name))
            throw_dev_failed(reason::DuplicateName, "device " + name.str() + " already exists", "DeviceServer");
    }
    auto s = std::make_unique<Slot>();
    s->cls = &cls;
    s->device = cls.create(name);
    s->device->database_ = database_;
    for (const auto& a : cls.attributes())
        s->attr_configs.push_back(a.config);
    {
        std::lock_guard l(s->exec);
        init_locked(*s, true);
    }
    auto& dev = *s->device;
    std::unique_lock l(table_mutex_);
    by_name_[name] = s.get();
    slots_.push_back(std::move(s));
    return dev;
}

Device& DeviceServer::add_admin_device()
{
    if (!admin_class_) {
        auto cls = std::make_shared<DeviceClass>(
            db::kAdminClass, [](DeviceClass& c, const DeviceName& n) { return std::make_unique<AdminDevice>(c, n); },
            "Device server administration");
        auto target = [](const std::vector<std::string>& s, std::size_t i) { return DeviceName::parse(s.at(i)); };
        cls->command(CommandInfo{"AddObjPolling", TypeTag::DevVarLongStringArray, TypeTag::DevVoid,
                                 "longs [period_ms], strings [device, command|attribute, name]", {}},
                     [this, target](Device&, const TangoValue& in) {
                         const auto& a = in.get<LongStringArray>();
                         if (a.longs.size() != 1 || a.strings.size() != 3)
                             throw_dev_failed(reason::MalformedArgument,
                                              "expected longs [period] and strings [device, kind, name]",
                                              "AddObjPolling");
                         add_poll(target(a.strings, 0),
                                  {polling::poll_kind_from_string(a.strings[1]), a.strings[2], a.longs[0]});
                         return TangoValue{};
                     });
        cls->command(CommandInfo{"RemObjPolling", TypeTag::DevVarStringArray, TypeTag::DevVoid,
                                 "[device, command|attribute, name]", {}},
                     [this, target](Device&, const TangoValue& in) {
                         const auto& a = in.get<std::vector<std::string>>();
                         if (a.size() != 3)
                             throw_dev_failed(reason::MalformedArgument, "expected [device, kind, name]",
                                              "RemObjPolling");
                         remove_poll(target(a, 0), polling::poll_kind_from_string(a[1]), a[2]);
                         return TangoValue{};
                     });
        cls->command(CommandInfo{"StopPolling", TypeTag::DevVoid, TypeTag::DevVoid, "Suspend every poller", {}},
                     [this](Device&, const TangoValue&) {
                         stop_polling();
                         return TangoValue{};
                     });
        cls->command(CommandInfo{"StartPolling", TypeTag::DevVoid, TypeTag::DevVoid, "Resume every poller", {}},
                     [this](Device&, const TangoValue&) {
                         start_polling();
                         return TangoValue{};
                     });
        cls->command(CommandInfo{"DevPollStatus", TypeTag::DevString, TypeTag::DevVarStringArray,
                                 "One line per polled object of a device", {}},
                     [this](Device&, const TangoValue& in) {
                         return TangoValue(poll_status(DeviceName::parse(in.get<std::string>())));
                     });
        cls->command(CommandInfo{"QueryDevice", TypeTag::DevVoid, TypeTag::DevVarStringArray,
                                 "Class::device for every hosted device", {}},
                     [this](Device&, const TangoValue&) {
                         std::vector<std::string> out;
                         std::shared_lock l(table_mutex_);
                         for (const auto& s : slots_)
                             out.push_back(s->cls->name() + "::" + s->device->name().str());
                         return TangoValue(std::move(out));
                     });
        cls->command(CommandInfo{"QueryClass", TypeTag::DevVoid, TypeTag::DevVarStringArray,
                                 "Registered device classes", {}},
                     [this](Device&, const TangoValue&) {
                         std::vector<std::string> out;
                         for (const auto& c : classes_)
                             out.push_back(c->name());
                         return TangoValue(std::move(out));
                     });
        cls->command(CommandInfo{"DevExecCount", TypeTag::DevVarStringArray, TypeTag::DevULong,
                                 "[device, command]: handler executions since start", {}},
                     [this, target](Device&, const TangoValue& in) {
                         const auto& a = in.get<std::vector<std::string>>();
                         if (a.size() != 2)
                             throw_dev_failed(reason::MalformedArgument, "expected [device, command]",
                                              "DevExecCount");
                         return TangoValue(static_cast<std::uint32_t>(execution_count(target(a, 0), a[1])));
                     });
        cls->command(CommandInfo{"Kill", TypeTag::DevVoid, TypeTag::DevVoid, "Shut the server process down", {}},
                     [this](Device&, const TangoValue&) {
                         if (!kill_handler_)
                             throw_dev_failed(reason::CommandNotAllowed, "this server cannot be killed remotely",
                                              "Kill");
                         kill_handler_();
                         return TangoValue{};
                     });
        cls->command(CommandInfo{"FaultInject", TypeTag::DevVarLongStringArray, TypeTag::DevVoid,
                                 "longs [count], strings [\"drop_reply_after_execute\"]; test servers only", {}},
                     [this](Device&, const TangoValue& in) {
                         if (!fault_commands_)
                             throw_dev_failed(reason::CommandNotAllowed, "fault injection is not enabled",
                                              "FaultInject");
                         const auto& a = in.get<LongStringArray>();
                         if (a.longs.size() != 1 || a.strings.size() != 1 || a.strings[0] != "drop_reply_after_execute")
                             throw_dev_failed(reason::MalformedArgument,
                                              "expected longs [count], strings [drop_reply_after_execute]",
                                              "FaultInject");
                         faults_.drop_reply_after_execute = a.longs[0];
                         return TangoValue{};
                     });
        admin_class_ = std::move(cls);
    }
    return create(*admin_class_, DeviceName::parse(db::admin_device_name(server_id_)));
}

std::vector<DeviceName> DeviceServer::device_names() const
{
    std::shared_lock l(table_mutex_);
    std::vector<DeviceName> out;
    for (const auto& s : slots_)
        out.push_back(s->device->name());
    return out;
}

Device* DeviceServer::find_device(const DeviceName& name) const
{
    std::shared_lock l(table_mutex_);
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : it->second->device.get();
}

DeviceServer::Slot& DeviceServer::slot(const DeviceName& dev) const
{
    std::shared_lock l(table_mutex_);
    auto it = by_name_.find(dev);
    if (it == by_name_.end())
        throw_dev_failed(reason::DeviceNotFound, "device " + dev.str() + " is not served by " + server_id_,
                         "DeviceServer");
    return *it->second;
}

void DeviceServer::load_properties(Slot& s)
{
    const auto& specs = s.cls->properties();
    std::vector<std::string> names;
    for (const auto& p : specs)
        names.push_back(p.name);
    names.push_back(kPolledCmdProperty);
    names.push_back(kPolledAttrProperty);

    std::map<std::string, std::vector<std::string>> fetched;
    if (properties_)
        for (auto& p : properties_->get(s.device->name().str(), names))
            if (!p.values.empty())
                fetched[to_lower(p.name)] = std::move(p.values);

    PropertyBag bag;
    for (const auto& spec : specs) {
        auto it = fetched.find(to_lower(spec.name));
        auto values = it != fetched.end() ? it->second : spec.default_values;
        if (it == fetched.end() && values.empty())
            continue;
        bag.set(spec.name, values);
        // Parse now so a bad value fails init rather than a later command.
        switch (spec.type) {
        case PropertyType::String: bag.get_string(spec.name); break;
        case PropertyType::Integer: bag.get_integer(spec.name); break;
        case PropertyType::Float: bag.get_float(spec.name); break;
        case PropertyType::StringList: break;
        case PropertyType::IntegerList: bag.get_integer_list(spec.name); break;
        case PropertyType::FloatList: bag.get_float_list(spec.name); break;
        }
    }
    for (const char* n : {kPolledCmdProperty, kPolledAttrProperty}) {
        auto it = fetched.find(n);
        if (it != fetched.end())
            bag.set(n, it->second);
    }
    s.device->properties_ = std::move(bag);
}

void DeviceServer::init_locked(Slot& s, bool first)
{
    auto& dev = *s.device;
    if (!first) {
        try {
            dev.delete_device();
        } catch (...) {
            auto errs = errors_of_current_exception(reason::InitFailed, "delete_device");
            log_warn(kTag, dev.name().str() + ": delete_device failed: " + errs.front().description);
        }
    }
    dev.set_state(DeviceState::UNKNOWN);
    dev.set_status("");
    try {
        load_properties(s);
        dev.init_device();
        if (dev.get_state() == DeviceState::UNKNOWN)
            dev.set_state(DeviceState::ON);
    } catch (...) {
        auto errs = errors_of_current_exception(reason::InitFailed, "init_device");
        dev.set_state(DeviceState::FAULT);
        dev.set_status("Init failed: " + errs.front().reason + ": " + errs.front().description);
        log_warn(kTag, dev.name().str() + " entered FAULT: " + errs.front().description);
    }
}

TangoValue DeviceServer::execute_locked(Slot& s, const CommandEntry& cmd, const TangoValue& argin)
{
    auto& dev = *s.device;
    const auto st = dev.get_state();
    if (!cmd.info.allowed_in(st))
        throw_dev_failed(reason::CommandNotAllowed,
                         "command " + cmd.info.name + " is not allowed in state " + std::string(to_string(st)),
                         cmd.info.name);
    s.count(cmd.info.name);
    if (!cmd.handler) {
        init_locked(s, false);
        return TangoValue{};
    }
    TangoValue out;
    try {
        out = cmd.handler(dev, argin);
    } catch (...) {
        throw DevFailed(errors_of_current_exception(reason::CommandFailed, cmd.info.name));
    }
    if (out.tag() != cmd.info.out_type)
        throw_dev_failed(reason::BadCommandOutput,
                         "command " + cmd.info.name + " returned " + std::string(to_string(out.tag())) +
                             " but declares " + std::string(to_string(cmd.info.out_type)),
                         cmd.info.name);
    return out;
}

wire::CommandReply DeviceServer::command_inout(const DeviceName& dev, std::string_view command,
                                               const TangoValue& argin)
{
    auto& s = slot(dev);
    const auto* cmd = s.cls->find_command(command);
    if (!cmd)
        throw_dev_failed(reason::CommandNotFound,
                         "command " + std::string(command) + " not found on device " + dev.str(), "command_inout");
    if (argin.tag() != cmd->info.in_type)
        throw_dev_failed(reason::IncompatibleCmdArgumentType,
                         "command " + cmd->info.name + " expects " + std::string(to_string(cmd->info.in_type)) +
                             ", got " + std::string(to_string(argin.tag())),
                         cmd->info.name);
    if (cmd->info.in_type == TypeTag::DevVoid && s.cache.is_polled(PollKind::Command, cmd->info.name)) {
        const auto st = s.device->get_state();
        if (!cmd->info.allowed_in(st))
            throw_dev_failed(reason::CommandNotAllowed,
                             "command " + cmd->info.name + " is not allowed in state " + std::string(to_string(st)),
                             cmd->info.name);
        std::optional<polling::CacheSample> sample;
        try {
            sample = s.cache.read(PollKind::Command, cmd->info.name, clock_.now_ms());
        } catch (const DevFailed& e) {
            if (!e.has_reason(reason::PollObjNotFound))
                throw;
        }
        if (sample) {
            if (auto* errs = std::get_if<DevErrorList>(&sample->value))
                throw DevFailed(*errs);
            return {std::get<TangoValue>(sample->value), DataSource::Cache};
        }
    }
    std::lock_guard l(s.exec);
    return {execute_locked(s, *cmd, argin), DataSource::Hardware};
}

wire::AttrReadResult DeviceServer::read_locked(Slot& s, const AttributeEntry& attr)
{
    const auto& cfg = attr.config;
    AttributeValue v;
    try {
        v = attr.read(*s.device);
    } catch (...) {
        return errors_of_current_exception(reason::AttrReadFailed, cfg.name);
    }
    if (v.element_type() != cfg.element_type || !fits_config(v, cfg))
        return DevErrorList{{std::string(reason::AttrReadFailed),
                             "read handler of " + cfg.name + " returned a " +
                                 std::string(to_string(v.element_type())) + " reading of " +
                                 std::to_string(v.dim_x()) + "x" + std::to_string(v.dim_y()) +
                                 " that does not fit the configuration",
                             cfg.name, ErrSeverity::Err}};
    v.set_name(cfg.name);
    if (v.timestamp_ms() == 0)
        v.set_timestamp_ms(clock_.now_ms());
    v.set_source(DataSource::Hardware);
    return v;
}

std::vector<wire::AttrReadResult> DeviceServer::read_attributes(const DeviceName& dev,
                                                                const std::vector<std::string>& names)
{
    auto& s = slot(dev);
    std::vector<std::string> wanted = names;
    if (wanted.empty())
        for (const auto& a : s.cls->attributes())
            if (a.config.writable != AttrWritable::Write)
                wanted.push_back(a.config.name);

    std::vector<wire::AttrReadResult> out;
    out.reserve(wanted.size());
    for (const auto& n : wanted) {
        const auto* attr = s.cls->find_attribute(n);
        if (!attr) {
            out.emplace_back(DevErrorList{{std::string(reason::AttrNotFound),
                                           "attribute " + n + " not found on device " + dev.str(), n,
                                           ErrSeverity::Err}});
            continue;
        }
        if (attr->config.writable == AttrWritable::Write) {
            out.emplace_back(DevErrorList{
                {std::string(reason::AttrNotReadable), "attribute " + attr->config.name + " is write-only",
                 attr->config.name, ErrSeverity::Err}});
            continue;
        }
        if (s.cache.is_polled(PollKind::Attribute, attr->config.name)) {
            try {
                auto sample = s.cache.read(PollKind::Attribute, attr->config.name, clock_.now_ms());
                if (auto* errs = std::get_if<DevErrorList>(&sample.value))
                    out.emplace_back(*errs);
                else
                    out.emplace_back(std::get<AttributeValue>(std::move(sample.value)));
                continue;
            } catch (const DevFailed& e) {
                if (!e.has_reason(reason::PollObjNotFound)) {
                    out.emplace_back(e.errors());
                    continue;
                }
            }
        }
        std::lock_guard l(s.exec);
        out.push_back(read_locked(s, *attr));
    }
    return out;
}

void DeviceServer::write_attributes(const DeviceName& dev, const std::vector<AttributeValue>& values)
{
    auto& s = slot(dev);
    std::vector<const AttributeEntry*> targets;
    for (const auto& v : values) {
        const auto* attr = s.cls->find_attribute(v.name());
        if (!attr)
            throw_dev_failed(reason::AttrNotFound, "attribute " + v.name() + " not found on device " + dev.str(),
                             "write_attributes");
        const auto& cfg = attr->config;
        if (cfg.writable == AttrWritable::Read)
            throw_dev_failed(reason::AttrNotWritable, "attribute " + cfg.name + " is read-only", cfg.name);
        if (v.element_type() != cfg.element_type)
            throw_dev_failed(reason::IncompatibleAttrDataType,
                             "attribute " + cfg.name + " holds " + std::string(to_string(cfg.element_type)) +
                                 ", got " + std::string(to_string(v.element_type())),
                             cfg.name);
        if (!fits_config(v, cfg))
            throw_dev_failed(reason::IncompatibleAttrDataType,
                             "value " + std::to_string(v.dim_x()) + "x" + std::to_string(v.dim_y()) +
                                 " does not fit " + std::string(to_string(cfg.format)) + " attribute " + cfg.name +
                                 " (max " + std::to_string(cfg.max_dim_x) + "x" + std::to_string(cfg.max_dim_y) +
                                 ")",
                             cfg.name);
        targets.push_back(attr);
    }
    std::lock_guard l(s.exec);
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto v = values[i];
        v.set_name(targets[i]->config.name);
        try {
            targets[i]->write(*s.device, v);
        } catch (...) {
            throw DevFailed(errors_of_current_exception(reason::CommandFailed, targets[i]->config.name));
        }
    }
}

std::vector<CommandInfo> DeviceServer::command_list(const DeviceName& dev)
{
    auto& s = slot(dev);
    std::vector<CommandInfo> out;
    for (const auto& c : s.cls->commands())
        out.push_back(c.info);
    return out;
}

CommandInfo DeviceServer::command_query(const DeviceName& dev, std::string_view command)
{
    auto& s = slot(dev);
    const auto* cmd = s.cls->find_command(command);
    if (!cmd)
        throw_dev_failed(reason::CommandNotFound,
                         "command " + std::string(command) + " not found on device " + dev.str(), "command_query");
    return cmd->info;
}

std::vector<AttributeConfig> DeviceServer::attribute_config(const DeviceName& dev,
                                                            const std::vector<std::string>& names)
{
    auto& s = slot(dev);
    std::lock_guard l(s.config_mutex);
    if (names.empty())
        return s.attr_configs;
    std::vector<AttributeConfig> out;
    for (const auto& n : names) {
        auto it = std::find_if(s.attr_configs.begin(), s.attr_configs.end(),
                               [&](const AttributeConfig& c) { return iequals(c.name, n); });
        if (it == s.attr_configs.end())
            throw_dev_failed(reason::AttrNotFound, "attribute " + n + " not found on device " + dev.str(),
                             "get_attribute_config");
        out.push_back(*it);
    }
    return out;
}

void DeviceServer::set_attribute_config(const DeviceName& dev, const std::vector<AttributeConfig>& configs)
{
    auto& s = slot(dev);
    std::lock_guard l(s.config_mutex);
    std::vector<AttributeConfig*> targets;
    for (const auto& c : configs) {
        auto it = std::find_if(s.attr_configs.begin(), s.attr_configs.end(),
                               [&](const AttributeConfig& x) { return iequals(x.name, c.name); });
        if (it == s.attr_configs.end())
            throw_dev_failed(reason::AttrNotFound, "attribute " + c.name + " not found on device " + dev.str(),
                             "set_attribute_config");
        if (!same_shape(*it, c))
            throw_dev_failed(reason::BadAttributeConfig,
                             "only description and unit of " + c.name + " can change at run time",
                             "set_attribute_config");
        targets.push_back(&*it);
    }
    for (std::size_t i = 0; i < configs.size(); ++i) {
        targets[i]->description = configs[i].description;
        targets[i]->unit = configs[i].unit;
    }
}

DeviceState DeviceServer::state(const DeviceName& dev)
{
    return std::get<DeviceState>(command_inout(dev, kStateCommand, {}).value.storage());
}

std::string DeviceServer::status(const DeviceName& dev)
{
    return command_inout(dev, kStatusCommand, {}).value.get<std::string>();
}

polling::CacheSample DeviceServer::acquire(Slot& s, const polling::PollEntry& entry)
{
    polling::CacheSample sample;
    std::lock_guard l(s.exec);
    if (entry.kind == PollKind::Command) {
        const auto* cmd = s.cls->find_command(entry.name);
        try {
            if (!cmd)
                throw_dev_failed(reason::CommandNotFound, "polled command " + entry.name + " vanished", "poller");
            sample.value = execute_locked(s, *cmd, TangoValue{});
        } catch (const DevFailed& e) {
            sample.value = e.errors();
        }
    } else {
        const auto* attr = s.cls->find_attribute(entry.name);
        if (attr)
            std::visit([&](auto&& r) { sample.value = std::move(r); }, read_locked(s, *attr));
        else
            sample.value = DevErrorList{{std::string(reason::AttrNotFound), "polled attribute vanished", entry.name,
                                         ErrSeverity::Err}};
    }
    sample.acquired_at_ms = clock_.now_ms();
    return sample;
}

void DeviceServer::add_poll(const DeviceName& dev, const polling::PollEntry& entry, bool persist)
{
    auto& s = slot(dev);
    auto canonical = entry;
    if (entry.period_ms < polling::kMinPeriodMs)
        throw_dev_failed(reason::BadPeriod,
                         "polling period " + std::to_string(entry.period_ms) + " ms is below " +
                             std::to_string(polling::kMinPeriodMs) + " ms",
                         "add_poll");
    if (entry.kind == PollKind::Command) {
        const auto* cmd = s.cls->find_command(entry.name);
        if (!cmd)
            throw_dev_failed(reason::CommandNotFound, "command " + entry.name + " not found on device " + dev.str(),
                             "add_poll");
        if (cmd->info.in_type != TypeTag::DevVoid)
            throw_dev_failed(reason::PollNotVoid,
                             "command " + cmd->info.name + " takes " + std::string(to_string(cmd->info.in_type)) +
                                 "; only DevVoid-input commands can be polled",
                             "add_poll");
        canonical.name = cmd->info.name;
    } else {
        const auto* attr = s.cls->find_attribute(entry.name);
        if (!attr)
            throw_dev_failed(reason::AttrNotFound, "attribute " + entry.name + " not found on device " + dev.str(),
                             "add_poll");
        if (attr->config.writable == AttrWritable::Write)
            throw_dev_failed(reason::AttrNotReadable, "attribute " + attr->config.name + " is write-only",
                             "add_poll");
        canonical.name = attr->config.name;
    }
    {
        std::lock_guard l(net_mutex_);
        if (!s.poller) {
            s.poller = std::make_unique<polling::DevicePoller>(
                s.cache, [this, &s](const polling::PollEntry& e) { return acquire(s, e); }, clock_);
            if (polling_stopped_)
                s.poller->suspend();
        }
    }
    const bool existed = s.cache.is_polled(canonical.kind, canonical.name);
    s.poller->add(canonical);
    if (!persist)
        return;
    try {
        persist_polling(s, canonical.kind);
    } catch (const DevFailed&) {
        if (!existed)
            s.poller->remove(canonical.kind, canonical.name);
        throw;
    }
}

void DeviceServer::remove_poll(const DeviceName& dev, PollKind kind, const std::string& name, bool persist)
{
    auto& s = slot(dev);
    if (!s.poller || !s.cache.is_polled(kind, name))
        throw_dev_failed(reason::PollObjNotFound,
                         std::string(to_string(kind)) + " " + name + " is not polled on " + dev.str(), "remove_poll");
    s.poller->remove(kind, name);
    if (persist)
        persist_polling(s, kind);
}

void DeviceServer::persist_polling(Slot& s, PollKind kind)
{
    if (!properties_)
        return;
    db::Property prop{kind == PollKind::Command ? kPolledCmdProperty : kPolledAttrProperty, {}};
    for (const auto& e : s.cache.entries()) {
        if (e.kind != kind)
            continue;
        std::string name = e.name;
        if (kind == PollKind::Command) {
            if (const auto* c = s.cls->find_command(e.name))
                name = c->info.name;
        } else if (const auto* a = s.cls->find_attribute(e.name)) {
            name = a->config.name;
        }
        prop.values.push_back(name);
        prop.values.push_back(std::to_string(e.period_ms));
    }
    properties_->put(s.device->name().str(), prop);
}

void DeviceServer::stop_polling()
{
    std::shared_lock tl(table_mutex_);
    std::lock_guard l(net_mutex_);
    polling_stopped_ = true;
    for (auto& s : slots_)
        if (s->poller)
            s->poller->suspend();
}

void DeviceServer::start_polling()
{
    std::shared_lock tl(table_mutex_);
    std::lock_guard l(net_mutex_);
    polling_stopped_ = false;
    for (auto& s : slots_)
        if (s->poller)
            s->poller->resume();
}

std::vector<std::string> DeviceServer::poll_status(const DeviceName& dev)
{
    auto& s = slot(dev);
    std::vector<std::string> out;
    const auto now = clock_.now_ms();
    for (const auto& e : s.cache.entries()) {
        auto hist = s.cache.history(e.kind, e.name);
        std::string line = std::string(to_string(e.kind)) + " " + e.name + " period=" + std::to_string(e.period_ms) +
                           "ms samples=" + std::to_string(hist.size());
        if (!hist.empty()) {
            line += " age=" + std::to_string(now - hist.front().acquired_at_ms) + "ms";
            if (auto* errs = std::get_if<DevErrorList>(&hist.front().value))
                line += " error=" + errs->front().reason;
        }
        if (s.poller && s.poller->suspended())
            line += " suspended";
        out.push_back(std::move(line));
    }
    return out;
}

void DeviceServer::restore_polling()
{
    std::vector<Slot*> all;
    {
        std::shared_lock l(table_mutex_);
        for (auto& s : slots_)
            all.push_back(s.get());
    }
    for (auto* s : all) {
        const auto& bag = s->device->properties();
        for (auto [prop, kind] : {std::pair{kPolledCmdProperty, PollKind::Command},
                                  std::pair{kPolledAttrProperty, PollKind::Attribute}}) {
            if (!bag.has(prop))
                continue;
            const auto& v = bag.raw(prop);
            for (std::size_t i = 0; i + 1 < v.size(); i += 2) {
                std::int64_t period = 0;
                auto [p, ec] = std::from_chars(v[i + 1].data(), v[i + 1].data() + v[i + 1].size(), period);
                try {
                    if (ec != std::errc() || p != v[i + 1].data() + v[i + 1].size())
                        throw_dev_failed(reason::BadPeriod, "'" + v[i + 1] + "' is not a period", "restore_polling");
                    add_poll(s->device->name(), {kind, v[i], period}, false);
                } catch (const DevFailed& e) {
                    log_warn(kTag, s->device->name().str() + ": cannot restore polling of " + v[i] + ": " +
                                       e.errors().front().description);
                }
            }
        }
    }
}

polling::PollCache& DeviceServer::cache(const DeviceName& dev)
{
    return slot(dev).cache;
}

polling::DevicePoller& DeviceServer::poller(const DeviceName& dev)
{
    auto& s = slot(dev);
    if (!s.poller)
        throw_dev_failed(reason::PollObjNotFound, "nothing is polled on " + dev.str(), "DeviceServer::poller");
    return *s.poller;
}

std::uint64_t DeviceServer::execution_count(const DeviceName& dev, std::string_view command) const
{
    auto& s = slot(dev);
    std::lock_guard l(s.counts_mutex);
    auto it = s.counts.find(to_lower(command));
    return it == s.counts.end() ? 0 : it->second;
}

wire::ReplyEnvelope DeviceServer::handle(const wire::RequestEnvelope& req, bool& drop_connection)
{
    wire::ReplyEnvelope rep{req.request_id, wire::ReplyStatus::Ok, {}};
    drop_connection = false;
    try {
        auto op = wire::op_code_from_byte(req.op_code);
        if (!op)
            throw_dev_failed(reason::BadOpcode, "unknown operation code " + std::to_string(req.op_code), "server");
        const auto dev = DeviceName::parse(req.device);
        wire::Reader r(req.payload);
        Bytes& out = rep.payload;
        wire::Writer w(out);
        switch (*op) {
        case OpCode::CommandInout: {
            auto c = wire::decode_command_request(req.payload);
            std::optional<DevFailed> failure;
            try {
                out = wire::encode_command_reply(command_inout(dev, c.command, c.argument));
            } catch (const DevFailed& e) {
                failure = e;
            }
            // admin commands never consume a fault, so FaultInject's own reply gets through
            int pending = dev.str() == db::admin_device_name(server_id_) ? 0 : faults_.drop_reply_after_execute.load();
            while (pending > 0 && !faults_.drop_reply_after_execute.compare_exchange_weak(pending, pending - 1)) {
            }
            if (pending > 0) {
                drop_connection = true;
                return rep;
            }
            if (failure)
                throw *failure;
            break;
        }
        case OpCode::ReadAttributes: {
            auto names = wire::decode_strings(r);
            r.expect_end("read_attributes request");
            wire::encode_read_results(w, read_attributes(dev, names));
            break;
        }
        case OpCode::WriteAttributes: {
            const auto n = r.count(1);
            std::vector<AttributeValue> values;
            for (std::size_t i = 0; i < n; ++i)
                values.push_back(wire::decode_attribute_value(r));
            r.expect_end("write_attributes request");
            write_attributes(dev, values);
            break;
        }
        case OpCode::CommandListQuery: {
            r.expect_end("command_list_query request");
            auto list = command_list(dev);
            w.count(list.size());
            for (const auto& c : list)
                wire::encode_command_info(w, c);
            break;
        }
        case OpCode::CommandQuery: {
            auto name = r.str();
            r.expect_end("command_query request");
            wire::encode_command_info(w, command_query(dev, name));
            break;
        }
        case OpCode::GetAttributeConfig: {
            auto names = wire::decode_strings(r);
            r.expect_end("get_attribute_config request");
            auto list = attribute_config(dev, names);
            w.count(list.size());
            for (const auto& c : list)
                wire::encode_attribute_config(w, c);
            break;
        }
        case OpCode::SetAttributeConfig: {
            const auto n = r.count(1);
            std::vector<AttributeConfig> configs;
            for (std::size_t i = 0; i < n; ++i)
                configs.push_back(wire::decode_attribute_config(r));
            r.expect_end("set_attribute_config request");
            set_attribute_config(dev, configs);
            break;
        }
        case OpCode::Ping:
            slot(dev);
            break;
        case OpCode::State:
            w.u8(static_cast<std::uint8_t>(state(dev)));
            break;
        case OpCode::Status:
            w.str(status(dev));
            break;
        }
    } catch (const DevFailed& e) {
        rep.status = wire::ReplyStatus::Error;
        rep.payload = wire::encode_errors(e.errors());
    } catch (const std::exception& e) {
        rep.status = wire::ReplyStatus::Error;
        rep.payload = wire::encode_errors({DevError{std::string(reason::CommandFailed), e.what(), "server"}});
    }
    return rep;
}

std::uint16_t DeviceServer::listen(const std::string& bind_host, std::uint16_t port)
{
    std::lock_guard l(net_mutex_);
    listener_ = net::Listener::bind(bind_host, port);
    port_ = listener_.port();
    accept_thread_ = std::thread([this] { accept_loop(); });
    return port_;
}

void DeviceServer::accept_loop()
{
    for (;;) {
        auto sock = listener_.accept();
        if (!sock.valid())
            return;
        auto conn = std::make_shared<ServerConnection>(*this, std::move(sock));
        std::lock_guard l(net_mutex_);
        connections_.remove_if([](const std::shared_ptr<ServerConnection>& c) { return c->finished(); });
        connections_.push_back(conn);
        conn->start();
    }
}

void DeviceServer::stop_listening()
{
    listener_.shutdown();
    if (accept_thread_.joinable())
        accept_thread_.join();
    std::list<std::shared_ptr<ServerConnection>> conns;
    {
        std::lock_guard l(net_mutex_);
        conns.swap(connections_);
    }
    for (auto& c : conns)
        c->close();
    conns.clear();
}

void DeviceServer::shutdown()
{
    if (shut_down_)
        return;
    shut_down_ = true;
    {
        std::shared_lock l(table_mutex_);
        for (auto& s : slots_)
            if (s->poller)
                s->poller->stop();
    }
    stop_listening();
    std::unique_lock l(table_mutex_);
    for (auto it = slots_.rbegin(); it != slots_.rend(); ++it) {
        auto& s = **it;
        std::lock_guard el(s.exec);
        try {
            s.device->delete_device();
        } catch (...) {
            auto errs = errors_of_current_exception(reason::CommandFailed, "delete_device");
            log_warn(kTag, s.device->name().str() + ": delete_device failed: " + errs.front().description);
        }
    }
}

} // namespace tng::server
