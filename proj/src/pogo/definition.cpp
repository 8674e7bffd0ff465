#include "tng/pogo/definition.hpp"

#include "tng/core/device_name.hpp"
#include "tng/core/errors.hpp"
#include "tng/core/reasons.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tng::pogo {

using nlohmann::json;

namespace {

// Line of every value in a syntactically valid JSON text, keyed by JSON pointer.
// nlohmann does not keep positions, so this walks the text a second time.
class LineIndex {
public:
    explicit LineIndex(std::string_view text) : t_(text) { value(""); }

    int line_of(const std::string& pointer) const
    {
        // fall back to the closest enclosing value
        std::string p = pointer;
        for (;;) {
            auto it = lines_.find(p);
            if (it != lines_.end())
                return it->second;
            if (p.empty())
                return 1;
            p.erase(p.rfind('/'));
        }
    }

private:
    void skip_ws()
    {
        while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) {
            if (t_[i_] == '\n')
                ++line_;
            ++i_;
        }
    }

    std::string string_token()
    {
        std::string out;
        ++i_;
        while (i_ < t_.size() && t_[i_] != '"') {
            if (t_[i_] == '\\')
                ++i_;
            out += t_[i_++];
        }
        ++i_;
        return out;
    }

    void value(const std::string& ptr)
    {
        skip_ws();
        if (i_ >= t_.size())
            return;
        lines_.emplace(ptr, line_);
        const char c = t_[i_];
        if (c == '{') {
            ++i_;
            for (;;) {
                skip_ws();
                if (t_[i_] == '}') {
                    ++i_;
                    return;
                }
                if (t_[i_] == ',') {
                    ++i_;
                    continue;
                }
                auto key = string_token();
                skip_ws();
                ++i_; // ':'
                value(ptr + "/" + key);
            }
        }
        if (c == '[') {
            ++i_;
            for (int n = 0;; ++n) {
                skip_ws();
                if (t_[i_] == ']') {
                    ++i_;
                    return;
                }
                if (t_[i_] == ',') {
                    ++i_;
                    --n;
                    continue;
                }
                value(ptr + "/" + std::to_string(n));
            }
        }
        if (c == '"') {
            string_token();
            return;
        }
        while (i_ < t_.size() && !std::strchr(",]} \t\r\n", t_[i_]))
            ++i_;
    }

    std::string_view t_;
    std::size_t i_ = 0;
    int line_ = 1;
    std::map<std::string, int> lines_;
};

class Reader {
public:
    Reader(std::string_view text, std::string source) : lines_(text), source_(std::move(source)) {}

    [[noreturn]] void fail(std::string_view reason, const std::string& ptr, const std::string& what) const
    {
        throw_dev_failed(reason, source_ + ":" + std::to_string(lines_.line_of(ptr)) + ": " + what, "pogo");
    }

    const json& member(const json& obj, const std::string& ptr, const char* key, bool required) const
    {
        static const json null_value;
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required)
                fail(reason::ParseError, ptr, std::string("missing \"") + key + "\"");
            return null_value;
        }
        return *it;
    }

    std::string string(const json& obj, const std::string& ptr, const char* key, bool required = false) const
    {
        const auto& v = member(obj, ptr, key, required);
        if (v.is_null())
            return {};
        if (!v.is_string())
            fail(reason::ParseError, ptr + "/" + key, std::string("\"") + key + "\" must be a string");
        return v.get<std::string>();
    }

    std::uint32_t count(const json& obj, const std::string& ptr, const char* key, std::uint32_t dflt) const
    {
        const auto& v = member(obj, ptr, key, false);
        if (v.is_null())
            return dflt;
        if (!v.is_number_unsigned())
            fail(reason::ParseError, ptr + "/" + key, std::string("\"") + key + "\" must be a non-negative integer");
        return v.get<std::uint32_t>();
    }

    const json& array(const json& obj, const std::string& ptr, const char* key) const
    {
        static const json empty = json::array();
        const auto& v = member(obj, ptr, key, false);
        if (v.is_null())
            return empty;
        if (!v.is_array())
            fail(reason::ParseError, ptr + "/" + key, std::string("\"") + key + "\" must be an array");
        return v;
    }

    void object(const json& v, const std::string& ptr, std::initializer_list<const char*> known) const
    {
        if (!v.is_object())
            fail(reason::ParseError, ptr, "expected an object");
        for (auto it = v.begin(); it != v.end(); ++it) {
            bool ok = false;
            for (const char* k : known)
                ok = ok || it.key() == k;
            if (!ok)
                fail(reason::ParseError, ptr + "/" + it.key(), "unknown key \"" + it.key() + "\"");
        }
    }

    void identifier(const std::string& name, const std::string& ptr, const char* what) const
    {
        bool ok = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
        for (char c : name)
            ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ok)
            fail(reason::ParseError, ptr, std::string(what) + " \"" + name + "\" is not an identifier");
    }

private:
    LineIndex lines_;
    std::string source_;
};

const std::map<std::string, server::PropertyType>& property_types()
{
    static const std::map<std::string, server::PropertyType> m = {
        {"string", server::PropertyType::String},           {"integer", server::PropertyType::Integer},
        {"float", server::PropertyType::Float},             {"string-list", server::PropertyType::StringList},
        {"integer-list", server::PropertyType::IntegerList}, {"float-list", server::PropertyType::FloatList},
    };
    return m;
}

// Checks one category for duplicates, by name and by the generated identifier.
class UniqueNames {
public:
    UniqueNames(const Reader& r, const char* what) : r_(r), what_(what) {}

    void add(const std::string& name, const std::string& ptr)
    {
        if (!seen_.insert(to_lower(name)).second)
            r_.fail(reason::DuplicateName, ptr, std::string("duplicate ") + what_ + " \"" + name + "\"");
        if (!idents_.insert(snake_case(name)).second)
            r_.fail(reason::DuplicateName, ptr,
                    std::string(what_) + " \"" + name + "\" maps to an identifier already in use");
    }

private:
    const Reader& r_;
    const char* what_;
    std::set<std::string> seen_;
    std::set<std::string> idents_;
};

} // namespace

std::string snake_case(std::string_view name)
{
    std::string out;
    for (std::size_t i = 0; i < name.size(); ++i) {
        const auto c = static_cast<unsigned char>(name[i]);
        if (std::isupper(c)) {
            const bool prev_lower = i > 0 && (std::islower(static_cast<unsigned char>(name[i - 1])) ||
                                              std::isdigit(static_cast<unsigned char>(name[i - 1])));
            const bool next_lower = i + 1 < name.size() && std::islower(static_cast<unsigned char>(name[i + 1]));
            const bool prev_upper = i > 0 && std::isupper(static_cast<unsigned char>(name[i - 1]));
            if (!out.empty() && out.back() != '_' && (prev_lower || (prev_upper && next_lower)))
                out += '_';
            out += static_cast<char>(std::tolower(c));
        } else {
            out += static_cast<char>(c);
        }
    }
    return out;
}

std::string_view property_type_name(server::PropertyType t)
{
    for (const auto& [name, type] : property_types())
        if (type == t)
            return name;
    return "string";
}

ClassDefinition parse_definition(std::string_view text, std::string source_name)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte is 1-based and points just past the offending character
        const auto upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        std::string msg = e.what();
        if (auto pos = msg.find("syntax error"); pos != std::string::npos)
            msg = msg.substr(pos);
        throw_dev_failed(reason::ParseError, source_name + ":" + std::to_string(line) + ": " + msg, "pogo");
    }

    Reader r(text, source_name);
    r.object(doc, "", {"class", "description", "states", "commands", "attributes", "device_properties"});

    ClassDefinition def;
    def.source_name = source_name;
    def.class_name = r.string(doc, "", "class", true);
    r.identifier(def.class_name, "/class", "class name");
    def.description = r.string(doc, "", "description");

    // Generated member names, checked across categories and against the framework's.
    std::map<std::string, std::string> idents;
    auto claim = [&](const std::string& ident, const std::string& ptr, const std::string& what) {
        static const std::set<std::string> framework = {
            "init_device", "delete_device", "dev_state", "dev_status", "get_state", "set_state", "get_status",
            "set_status", "properties", "name", "device_class", "make_class"};
        if (framework.count(ident))
            r.fail(reason::ReservedName, ptr, what + " would generate " + ident + ", which the framework defines");
        auto [it, fresh] = idents.emplace(ident, what);
        if (!fresh)
            r.fail(reason::DuplicateName, ptr, what + " and " + it->second + " both generate " + ident);
    };

    const auto& states = r.array(doc, "", "states");
    std::set<DeviceState> seen_states;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto ptr = "/states/" + std::to_string(i);
        r.object(states[i], ptr, {"state", "description"});
        const auto name = r.string(states[i], ptr, "state", true);
        auto st = device_state_from_string(name);
        if (!st)
            r.fail(reason::UnknownType, ptr + "/state", "unknown state \"" + name + "\"");
        if (!seen_states.insert(*st).second)
            r.fail(reason::DuplicateName, ptr + "/state", "duplicate state \"" + name + "\"");
        def.states.push_back({*st, r.string(states[i], ptr, "description")});
    }

    const auto& commands = r.array(doc, "", "commands");
    UniqueNames cmd_names(r, "command");
    for (std::size_t i = 0; i < commands.size(); ++i) {
        const auto ptr = "/commands/" + std::to_string(i);
        const auto& c = commands[i];
        r.object(c, ptr, {"name", "in_type", "out_type", "description", "allowed_states"});
        CommandInfo info;
        info.name = r.string(c, ptr, "name", true);
        r.identifier(info.name, ptr + "/name", "command name");
        for (const char* reserved : {server::kStateCommand, server::kStatusCommand, server::kInitCommand})
            if (to_lower(info.name) == to_lower(reserved))
                r.fail(reason::ReservedName, ptr + "/name",
                       "command \"" + info.name + "\" is provided by the framework and cannot be redefined");
        cmd_names.add(info.name, ptr + "/name");
        claim(snake_case(info.name), ptr + "/name", "command " + info.name);
        for (auto [key, slot] : {std::pair{"in_type", &info.in_type}, std::pair{"out_type", &info.out_type}}) {
            auto tname = r.string(c, ptr, key);
            if (tname.empty())
                tname = "DevVoid";
            auto tag = type_tag_from_string(tname);
            if (!tag)
                r.fail(reason::UnknownType, ptr + "/" + key, "unknown type \"" + tname + "\"");
            *slot = *tag;
        }
        info.description = r.string(c, ptr, "description");
        const auto& allowed = r.array(c, ptr, "allowed_states");
        for (std::size_t k = 0; k < allowed.size(); ++k) {
            const auto aptr = ptr + "/allowed_states/" + std::to_string(k);
            auto st = allowed[k].is_string() ? device_state_from_string(allowed[k].get<std::string>()) : std::nullopt;
            if (!st)
                r.fail(reason::UnknownType, aptr, "unknown state " + allowed[k].dump());
            info.allowed_states.push_back(*st);
        }
        def.commands.push_back(std::move(info));
    }

    const auto& attributes = r.array(doc, "", "attributes");
    UniqueNames attr_names(r, "attribute");
    for (std::size_t i = 0; i < attributes.size(); ++i) {
        const auto ptr = "/attributes/" + std::to_string(i);
        const auto& a = attributes[i];
        r.object(a, ptr, {"name", "type", "format", "writable", "max_dim_x", "max_dim_y", "description", "unit"});
        AttributeConfig cfg;
        cfg.name = r.string(a, ptr, "name", true);
        r.identifier(cfg.name, ptr + "/name", "attribute name");
        attr_names.add(cfg.name, ptr + "/name");
        claim("read_" + snake_case(cfg.name), ptr + "/name", "attribute " + cfg.name);
        claim("write_" + snake_case(cfg.name), ptr + "/name", "attribute " + cfg.name);
        const auto tname = r.string(a, ptr, "type", true);
        auto et = attr_element_type_from_string(tname);
        if (!et)
            r.fail(reason::UnknownType, ptr + "/type", "unknown attribute type \"" + tname + "\"");
        cfg.element_type = *et;
        auto fname = r.string(a, ptr, "format");
        auto fmt = attr_format_from_string(fname.empty() ? "Scalar" : fname);
        if (!fmt)
            r.fail(reason::UnknownType, ptr + "/format", "unknown format \"" + fname + "\"");
        cfg.format = *fmt;
        auto wname = r.string(a, ptr, "writable");
        auto w = attr_writable_from_string(wname.empty() ? "Read" : wname);
        if (!w)
            r.fail(reason::UnknownType, ptr + "/writable", "unknown writable kind \"" + wname + "\"");
        cfg.writable = *w;
        cfg.max_dim_x = r.count(a, ptr, "max_dim_x", cfg.format == AttrFormat::Scalar ? 1 : 0);
        cfg.max_dim_y = r.count(a, ptr, "max_dim_y", 0);
        cfg.description = r.string(a, ptr, "description");
        cfg.unit = r.string(a, ptr, "unit");
        try {
            cfg.validate();
        } catch (const DevFailed& e) {
            r.fail(reason::ParseError, ptr, "attribute \"" + cfg.name + "\": " + e.errors().front().description);
        }
        def.attributes.push_back(std::move(cfg));
    }

    const auto& props = r.array(doc, "", "device_properties");
    UniqueNames prop_names(r, "property");
    for (std::size_t i = 0; i < props.size(); ++i) {
        const auto ptr = "/device_properties/" + std::to_string(i);
        const auto& p = props[i];
        r.object(p, ptr, {"name", "type", "default", "description"});
        PropertyDef pd;
        pd.name = r.string(p, ptr, "name", true);
        r.identifier(pd.name, ptr + "/name", "property name");
        prop_names.add(pd.name, ptr + "/name");
        claim(snake_case(pd.name) + "_", ptr + "/name", "property " + pd.name);
        const auto tname = r.string(p, ptr, "type", true);
        auto it = property_types().find(tname);
        if (it == property_types().end())
            r.fail(reason::UnknownType, ptr + "/type", "unknown property type \"" + tname + "\"");
        pd.type = it->second;
        const auto& dflt = r.member(p, ptr, "default", false);
        auto scalar_text = [&](const json& v, const std::string& vptr) {
            if (v.is_string())
                return v.get<std::string>();
            if (v.is_number() || v.is_boolean())
                return v.dump();
            r.fail(reason::ParseError, vptr, "property defaults must be strings or numbers");
        };
        if (dflt.is_array()) {
            for (std::size_t k = 0; k < dflt.size(); ++k)
                pd.default_values.push_back(scalar_text(dflt[k], ptr + "/default/" + std::to_string(k)));
        } else if (!dflt.is_null()) {
            pd.default_values.push_back(scalar_text(dflt, ptr + "/default"));
        }
        pd.description = r.string(p, ptr, "description");
        def.device_properties.push_back(std::move(pd));
    }
    return def;
}

ClassDefinition load_definition(const std::filesystem::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw_dev_failed(reason::IoFailure, "cannot read " + file.string(), "pogo");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_definition(ss.str(), file.filename().string());
}

std::string definition_to_json(const ClassDefinition& def)
{
    json doc;
    doc["class"] = def.class_name;
    doc["description"] = def.description;
    doc["states"] = json::array();
    for (const auto& s : def.states)
        doc["states"].push_back({{"state", to_string(s.state)}, {"description", s.description}});
    doc["commands"] = json::array();
    for (const auto& c : def.commands) {
        json allowed = json::array();
        for (auto st : c.allowed_states)
            allowed.push_back(to_string(st));
        doc["commands"].push_back({{"name", c.name},
                                   {"in_type", to_string(c.in_type)},
                                   {"out_type", to_string(c.out_type)},
                                   {"description", c.description},
                                   {"allowed_states", allowed}});
    }
    doc["attributes"] = json::array();
    for (const auto& a : def.attributes)
        doc["attributes"].push_back({{"name", a.name},
                                     {"type", to_string(a.element_type)},
                                     {"format", to_string(a.format)},
                                     {"writable", to_string(a.writable)},
                                     {"max_dim_x", a.max_dim_x},
                                     {"max_dim_y", a.max_dim_y},
                                     {"description", a.description},
                                     {"unit", a.unit}});
    doc["device_properties"] = json::array();
    for (const auto& p : def.device_properties)
        doc["device_properties"].push_back({{"name", p.name},
                                            {"type", property_type_name(p.type)},
                                            {"default", p.default_values},
                                            {"description", p.description}});
    return doc.dump(2) + "\n";
}

} // namespace tng::pogo
