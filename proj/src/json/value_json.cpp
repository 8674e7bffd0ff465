#include "tng/json/value_json.hpp"

#include "tng/core/reasons.hpp"

#include <cmath>
#include <limits>

namespace tng::jsonmap {

namespace {

[[noreturn]] void bad(const std::string& what) { throw_dev_failed(reason::BadJson, what, "json mapping"); }

template <class T>
T integer_from(const json& j)
{
    if (!j.is_number_integer())
        bad("expected an integer, got " + j.dump());
    if (j.is_number_unsigned()) {
        auto u = j.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<T>::max()))
            bad("integer " + j.dump() + " out of range");
        return static_cast<T>(u);
    }
    auto i = j.get<std::int64_t>();
    if (i < static_cast<std::int64_t>(std::numeric_limits<T>::min()) ||
        i > static_cast<std::int64_t>(std::numeric_limits<T>::max()))
        bad("integer " + j.dump() + " out of range");
    return static_cast<T>(i);
}

template <class T>
T scalar_from(const json& j)
{
    if constexpr (std::is_same_v<T, bool>) {
        if (!j.is_boolean())
            bad("expected a boolean, got " + j.dump());
        return j.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
        if (!j.is_string())
            bad("expected a string, got " + j.dump());
        return j.get<std::string>();
    } else if constexpr (std::is_floating_point_v<T>) {
        if (!j.is_number())
            bad("expected a number, got " + j.dump());
        double d = j.get<double>();
        if constexpr (std::is_same_v<T, float>) {
            if (std::isfinite(d) && std::fabs(d) > std::numeric_limits<float>::max())
                bad("number " + j.dump() + " out of float range");
        }
        return static_cast<T>(d);
    } else {
        return integer_from<T>(j);
    }
}

template <class T>
std::vector<T> seq_from(const json& j)
{
    if (!j.is_array())
        bad("expected an array, got " + j.dump());
    std::vector<T> out;
    out.reserve(j.size());
    for (const auto& e : j)
        out.push_back(scalar_from<T>(e));
    return out;
}

template <class T>
json seq_to(const std::vector<T>& v)
{
    json a = json::array();
    for (const auto& e : v) {
        if constexpr (std::is_same_v<T, bool>)
            a.push_back(static_cast<bool>(e));
        else
            a.push_back(e);
    }
    return a;
}

template <class T>
struct is_vector : std::false_type {};
template <class T>
struct is_vector<std::vector<T>> : std::true_type {};

template <std::size_t I>
TangoValue decode_alt(const json& j)
{
    using T = std::variant_alternative_t<I, ValueStorage>;
    if constexpr (std::is_same_v<T, Void>) {
        return TangoValue(Void{});
    } else if constexpr (std::is_same_v<T, DeviceState>) {
        if (!j.is_string())
            bad("expected a state name, got " + j.dump());
        auto s = device_state_from_string(j.get<std::string>());
        if (!s)
            bad("unknown state " + j.dump());
        return TangoValue(*s);
    } else if constexpr (std::is_same_v<T, LongStringArray>) {
        if (!j.is_object() || !j.contains("longs") || !j.contains("strings"))
            bad("expected {\"longs\":[...],\"strings\":[...]}");
        return TangoValue(LongStringArray{seq_from<std::int32_t>(j.at("longs")), seq_from<std::string>(j.at("strings"))});
    } else if constexpr (std::is_same_v<T, DoubleStringArray>) {
        if (!j.is_object() || !j.contains("doubles") || !j.contains("strings"))
            bad("expected {\"doubles\":[...],\"strings\":[...]}");
        return TangoValue(DoubleStringArray{seq_from<double>(j.at("doubles")), seq_from<std::string>(j.at("strings"))});
    } else if constexpr (is_vector<T>::value) {
        return TangoValue(seq_from<typename T::value_type>(j));
    } else {
        return TangoValue(scalar_from<T>(j));
    }
}

template <std::size_t... I>
TangoValue decode_dispatch(std::size_t tag, const json& j, std::index_sequence<I...>)
{
    using Fn = TangoValue (*)(const json&);
    static constexpr Fn table[] = {&decode_alt<I>...};
    return table[tag](j);
}

json data_to_json(const AttrData& d)
{
    return std::visit([](const auto& v) { return seq_to(v); }, d);
}

} // namespace

json to_json(const TangoValue& v)
{
    json out = json::object();
    out["type"] = std::string(to_string(v.tag()));
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Void>) {
            } else if constexpr (std::is_same_v<T, DeviceState>) {
                out["value"] = std::string(to_string(x));
            } else if constexpr (std::is_same_v<T, LongStringArray>) {
                out["value"] = json{{"longs", seq_to(x.longs)}, {"strings", seq_to(x.strings)}};
            } else if constexpr (std::is_same_v<T, DoubleStringArray>) {
                out["value"] = json{{"doubles", seq_to(x.doubles)}, {"strings", seq_to(x.strings)}};
            } else if constexpr (is_vector<T>::value) {
                out["value"] = seq_to(x);
            } else {
                out["value"] = x;
            }
        },
        v.storage());
    return out;
}

TangoValue value_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        bad("value must be an object with a \"type\" field");
    auto tag = type_tag_from_string(j.at("type").get<std::string>());
    if (!tag)
        bad("unknown type " + j.at("type").dump());
    if (*tag == TypeTag::DevVoid)
        return TangoValue(Void{});
    if (!j.contains("value"))
        bad("missing \"value\" for " + std::string(to_string(*tag)));
    return decode_dispatch(code_of(*tag), j.at("value"), std::make_index_sequence<kTypeTagCount>{});
}

TangoValue value_from_json(const json& j, TypeTag tag)
{
    if (j.is_object() && j.contains("type")) {
        auto v = value_from_json(j);
        if (v.tag() != tag)
            bad("value has type " + std::string(to_string(v.tag())) + ", expected " + std::string(to_string(tag)));
        return v;
    }
    if (tag == TypeTag::DevVoid)
        return TangoValue(Void{});
    return decode_dispatch(code_of(tag), j, std::make_index_sequence<kTypeTagCount>{});
}

json to_json(const AttributeValue& v)
{
    return json{{"name", v.name()},
                {"type", std::string(to_string(v.element_type()))},
                {"dim_x", v.dim_x()},
                {"dim_y", v.dim_y()},
                {"data", data_to_json(v.data())},
                {"timestamp", v.timestamp_ms()},
                {"source", std::string(to_string(v.source()))}};
}

AttributeValue attribute_value_from_json(const json& j, const AttributeConfig& cfg)
{
    // Accepts {"data":[...], "dim_x":..,"dim_y":..} or {"value": scalar} or a bare scalar/array.
    json data;
    std::uint32_t dim_x = 0, dim_y = 0;
    bool have_dims = false;
    if (j.is_object() && j.contains("data")) {
        data = j.at("data");
        if (j.contains("dim_x")) {
            dim_x = integer_from<std::uint32_t>(j.at("dim_x"));
            dim_y = j.contains("dim_y") ? integer_from<std::uint32_t>(j.at("dim_y")) : 0;
            have_dims = true;
        }
    } else if (j.is_object() && j.contains("value")) {
        data = j.at("value");
    } else {
        data = j;
    }
    if (!data.is_array())
        data = json::array({data});
    AttrData d;
    switch (cfg.element_type) {
    case AttrElementType::DevShort: d = seq_from<std::int16_t>(data); break;
    case AttrElementType::DevLong: d = seq_from<std::int32_t>(data); break;
    case AttrElementType::DevDouble: d = seq_from<double>(data); break;
    case AttrElementType::DevString: d = seq_from<std::string>(data); break;
    }
    if (!have_dims) {
        dim_x = static_cast<std::uint32_t>(element_count(d));
        dim_y = 0;
    }
    try {
        return AttributeValue(cfg.name, std::move(d), dim_x, dim_y);
    } catch (const DevFailed& e) {
        bad(e.errors().front().description);
    }
}

json to_json(const AttributeConfig& c)
{
    return json{{"name", c.name},
                {"writable", std::string(to_string(c.writable))},
                {"type", std::string(to_string(c.element_type))},
                {"format", std::string(to_string(c.format))},
                {"max_dim_x", c.max_dim_x},
                {"max_dim_y", c.max_dim_y},
                {"description", c.description},
                {"unit", c.unit}};
}

json to_json(const CommandInfo& c)
{
    json states = json::array();
    for (auto s : c.allowed_states)
        states.push_back(std::string(to_string(s)));
    return json{{"name", c.name},
                {"in_type", std::string(to_string(c.in_type))},
                {"out_type", std::string(to_string(c.out_type))},
                {"description", c.description},
                {"allowed_states", states}};
}

json to_json(const DevErrorList& errors)
{
    json a = json::array();
    for (const auto& e : errors)
        a.push_back(json{{"reason", e.reason},
                         {"description", e.description},
                         {"origin", e.origin},
                         {"severity", std::string(to_string(e.severity))}});
    return a;
}

} // namespace tng::jsonmap
