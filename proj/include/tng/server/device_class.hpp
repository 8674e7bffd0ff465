#pragma once

#include "tng/core/command_info.hpp"
#include "tng/server/device.hpp"

#include <functional>
#include <memory>
#include <optional>

namespace tng::server {

using CommandHandler = std::function<TangoValue(Device&, const TangoValue&)>;
/// Returns the reading; the framework fills in name, timestamp and source.
using AttrReadHandler = std::function<AttributeValue(Device&)>;
using AttrWriteHandler = std::function<void(Device&, const AttributeValue&)>;
using DeviceFactory = std::function<std::unique_ptr<Device>(DeviceClass&, const DeviceName&)>;

enum class PropertyType : std::uint8_t { String, Integer, Float, StringList, IntegerList, FloatList };

std::string_view to_string(PropertyType t);

struct PropertySpec {
    std::string name;
    PropertyType type = PropertyType::String;
    std::vector<std::string> default_values;
    std::string description;
};

struct CommandEntry {
    CommandInfo info;
    CommandHandler handler;
};

struct AttributeEntry {
    AttributeConfig config;
    AttrReadHandler read;
    AttrWriteHandler write;
};

namespace detail {

template <class T, class V>
struct alt_index;
template <class T, class... Ts>
struct alt_index<T, std::variant<Ts...>> {
    static constexpr std::size_t value = [] {
        constexpr bool hits[] = {std::is_same_v<T, Ts>...};
        for (std::size_t i = 0; i < sizeof...(Ts); ++i)
            if (hits[i])
                return i;
        return sizeof...(Ts);
    }();
};

template <class T>
constexpr TypeTag tag_of()
{
    using U = std::remove_cvref_t<T>;
    if constexpr (std::is_void_v<U>) {
        return TypeTag::DevVoid;
    } else {
        static_assert(ValueAlternative<U>, "handler types must be value alternatives");
        return static_cast<TypeTag>(alt_index<U, ValueStorage>::value);
    }
}

} // namespace detail

// Descriptor of one device class: commands, attributes and properties plus the
// handlers behind them. State, Status and Init are always present, listed first.
class DeviceClass {
public:
    DeviceClass(std::string name, DeviceFactory factory, std::string description = {});

    template <class D>
    static std::shared_ptr<DeviceClass> make(std::string name, std::string description = {})
    {
        return std::make_shared<DeviceClass>(
            std::move(name), [](DeviceClass& c, const DeviceName& n) { return std::make_unique<D>(c, n); },
            std::move(description));
    }

    const std::string& name() const noexcept { return name_; }
    const std::string& description() const noexcept { return description_; }

    /// Registering State or Status replaces the builtin handler; any other duplicate throws DUPLICATE_NAME.
    DeviceClass& command(CommandInfo info, CommandHandler handler);

    /// Typed member-function binding: R D::fn(A) with R, A value alternatives or void.
    template <class D, class R, class A>
    DeviceClass& command(std::string name, R (D::*fn)(A), std::string description = {},
                         std::vector<DeviceState> allowed = {})
    {
        CommandInfo info{std::move(name), detail::tag_of<A>(), detail::tag_of<R>(), std::move(description),
                         std::move(allowed)};
        return command(std::move(info), [fn](Device& d, const TangoValue& in) -> TangoValue {
            auto& self = static_cast<D&>(d);
            const auto& arg = in.get<std::remove_cvref_t<A>>();
            if constexpr (std::is_void_v<R>) {
                (self.*fn)(arg);
                return TangoValue{};
            } else {
                return TangoValue((self.*fn)(arg));
            }
        });
    }

    template <class D, class R>
    DeviceClass& command(std::string name, R (D::*fn)(), std::string description = {},
                         std::vector<DeviceState> allowed = {})
    {
        CommandInfo info{std::move(name), TypeTag::DevVoid, detail::tag_of<R>(), std::move(description),
                         std::move(allowed)};
        return command(std::move(info), [fn](Device& d, const TangoValue&) -> TangoValue {
            auto& self = static_cast<D&>(d);
            if constexpr (std::is_void_v<R>) {
                (self.*fn)();
                return TangoValue{};
            } else {
                return TangoValue((self.*fn)());
            }
        });
    }

    /// Throws BAD_ATTRIBUTE_CONFIG or DUPLICATE_NAME. A readable attribute needs a read
    /// handler, a writable one a write handler.
    DeviceClass& attribute(AttributeConfig config, AttrReadHandler read, AttrWriteHandler write = {});

    template <class D>
    DeviceClass& attribute(AttributeConfig config, AttributeValue (D::*read)(),
                           void (D::*write)(const AttributeValue&) = nullptr)
    {
        AttrReadHandler r;
        AttrWriteHandler w;
        if (read)
            r = [read](Device& d) { return (static_cast<D&>(d).*read)(); };
        if (write)
            w = [write](Device& d, const AttributeValue& v) { (static_cast<D&>(d).*write)(v); };
        return attribute(std::move(config), std::move(r), std::move(w));
    }

    DeviceClass& property(PropertySpec spec);

    const std::vector<CommandEntry>& commands() const noexcept { return commands_; }
    const std::vector<AttributeEntry>& attributes() const noexcept { return attributes_; }
    const std::vector<PropertySpec>& properties() const noexcept { return properties_; }

    /// Case-insensitive lookups; nullptr when absent.
    const CommandEntry* find_command(std::string_view name) const;
    const AttributeEntry* find_attribute(std::string_view name) const;

    std::unique_ptr<Device> create(const DeviceName& name);

private:
    std::string name_;
    std::string description_;
    DeviceFactory factory_;
    std::vector<CommandEntry> commands_;
    std::vector<AttributeEntry> attributes_;
    std::vector<PropertySpec> properties_;
};

/// Names of the framework-provided commands.
inline constexpr const char* kStateCommand = "State";
inline constexpr const char* kStatusCommand = "Status";
inline constexpr const char* kInitCommand = "Init";

} // namespace tng::server
