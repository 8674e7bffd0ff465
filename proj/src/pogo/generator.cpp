#include "tng/pogo/generator.hpp"

#include "tng/core/errors.hpp"
#include "tng/core/reasons.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

namespace tng::pogo {

namespace fs = std::filesystem;

namespace {

const char* cpp_type(TypeTag t)
{
    static const char* names[] = {
        "void",
        "bool",
        "std::int16_t",
        "std::int32_t",
        "float",
        "double",
        "std::uint16_t",
        "std::uint32_t",
        "std::string",
        "std::vector<bool>",
        "std::vector<std::int16_t>",
        "std::vector<std::int32_t>",
        "std::vector<float>",
        "std::vector<double>",
        "std::vector<std::uint16_t>",
        "std::vector<std::uint32_t>",
        "std::vector<std::string>",
        "tng::LongStringArray",
        "tng::DoubleStringArray",
        "tng::DeviceState",
    };
    return names[code_of(t)];
}

const char* cpp_element_type(AttrElementType t)
{
    switch (t) {
    case AttrElementType::DevShort: return "std::int16_t";
    case AttrElementType::DevLong: return "std::int32_t";
    case AttrElementType::DevDouble: return "double";
    case AttrElementType::DevString: return "std::string";
    }
    return "double";
}

const char* cpp_property_type(server::PropertyType t)
{
    switch (t) {
    case server::PropertyType::String: return "std::string";
    case server::PropertyType::Integer: return "std::int64_t";
    case server::PropertyType::Float: return "double";
    case server::PropertyType::StringList: return "std::vector<std::string>";
    case server::PropertyType::IntegerList: return "std::vector<std::int64_t>";
    case server::PropertyType::FloatList: return "std::vector<double>";
    }
    return "std::string";
}

const char* property_getter(server::PropertyType t)
{
    switch (t) {
    case server::PropertyType::String: return "get_string";
    case server::PropertyType::Integer: return "get_integer";
    case server::PropertyType::Float: return "get_float";
    case server::PropertyType::StringList: return "get_string_list";
    case server::PropertyType::IntegerList: return "get_integer_list";
    case server::PropertyType::FloatList: return "get_float_list";
    }
    return "get_string";
}

const char* property_enum(server::PropertyType t)
{
    switch (t) {
    case server::PropertyType::String: return "String";
    case server::PropertyType::Integer: return "Integer";
    case server::PropertyType::Float: return "Float";
    case server::PropertyType::StringList: return "StringList";
    case server::PropertyType::IntegerList: return "IntegerList";
    case server::PropertyType::FloatList: return "FloatList";
    }
    return "String";
}

std::string quote(std::string_view s)
{
    std::string out = "\"";
    for (char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (c < 0x20 || c == 0x7f) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\%03o", c);
                out += buf;
            } else {
                out += ch;
            }
        }
    }
    return out + "\"";
}

// Text for a // comment: one line, no trailing backslash continuation.
std::string comment_text(std::string_view s)
{
    std::string out;
    for (char c : s)
        out += (c == '\n' || c == '\r') ? ' ' : c;
    while (!out.empty() && (out.back() == '\\' || out.back() == ' '))
        out.pop_back();
    return out;
}

std::string html_escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string states_list(const std::vector<DeviceState>& states, const char* prefix)
{
    std::string out;
    for (std::size_t i = 0; i < states.size(); ++i)
        out += (i ? ", " : "") + std::string(prefix) + std::string(to_string(states[i]));
    return out;
}

class Emitter {
public:
    explicit Emitter(const RegionMap* regions) : regions_(regions) {}

    Emitter& operator<<(std::string_view s)
    {
        out_ += s;
        return *this;
    }

    void region(std::string_view indent, const std::string& id)
    {
        out_ += std::string(indent) + begin_marker(id) + "\n";
        if (regions_) {
            auto it = regions_->find(id);
            if (it != regions_->end())
                out_ += it->second;
        }
        out_ += std::string(indent) + end_marker(id) + "\n";
    }

    std::string str() && { return std::move(out_); }

private:
    const RegionMap* regions_;
    std::string out_;
};

std::string banner(const ClassDefinition& def)
{
    return "// Generated by pogo from " + comment_text(def.source_name) +
           ".\n// Only text inside protected regions survives regeneration.\n";
}

std::string command_signature(const CommandInfo& c, const std::string& qualifier)
{
    std::string sig = std::string(cpp_type(c.out_type)) + " " + qualifier + snake_case(c.name) + "(";
    if (c.in_type != TypeTag::DevVoid)
        sig += "const " + std::string(cpp_type(c.in_type)) + "& argin";
    return sig + ")";
}

std::string member_of(const PropertyDef& p) { return snake_case(p.name) + "_"; }

std::string render_header(const ClassDefinition& def, const RegionMap* regions)
{
    const auto& k = def.class_name;
    Emitter e(regions);
    e << banner(def) << "#pragma once\n\n"
      << "#include \"tng/server/device_class.hpp\"\n\n"
      << "#include <cstdint>\n#include <memory>\n#include <string>\n#include <vector>\n\n";
    e.region("", k + ".includes");
    e << "\n";
    if (!def.description.empty())
        e << "// " << comment_text(def.description) << "\n";
    e << "class " << k << " : public tng::server::Device {\n"
      << "public:\n"
      << "    using Device::Device;\n\n"
      << "    static std::shared_ptr<tng::server::DeviceClass> make_class();\n\n"
      << "    void init_device() override;\n"
      << "    void delete_device() override;\n";
    if (!def.commands.empty()) {
        e << "\n";
        for (const auto& c : def.commands)
            e << "    " << command_signature(c, "") << ";\n";
    }
    if (!def.attributes.empty()) {
        e << "\n";
        for (const auto& a : def.attributes) {
            const auto n = snake_case(a.name);
            if (a.writable != AttrWritable::Write)
                e << "    tng::AttributeValue read_" << n << "();\n";
            if (a.writable != AttrWritable::Read)
                e << "    void write_" << n << "(const tng::AttributeValue& w);\n";
        }
    }
    e << "\nprotected:\n";
    if (!def.device_properties.empty()) {
        e << "    // Device properties, refreshed before every init.\n";
        for (const auto& p : def.device_properties)
            e << "    " << cpp_property_type(p.type) << " " << member_of(p) << "{};\n";
        e << "\n";
    }
    e.region("    ", k + ".members");
    e << "};\n";
    return std::move(e).str();
}

std::string empty_reading(const AttributeConfig& a)
{
    const std::string t = cpp_element_type(a.element_type);
    const std::string name = quote(a.name);
    switch (a.format) {
    case AttrFormat::Scalar: return "tng::AttributeValue::scalar<" + t + ">(" + name + ", {})";
    case AttrFormat::Spectrum: return "tng::AttributeValue::spectrum<" + t + ">(" + name + ", {})";
    case AttrFormat::Image: return "tng::AttributeValue::image<" + t + ">(" + name + ", {}, 0, 0)";
    }
    return {};
}

std::string render_source(const ClassDefinition& def, const RegionMap* regions)
{
    const auto& k = def.class_name;
    Emitter e(regions);
    e << banner(def) << "#include \"" << k << ".hpp\"\n\n";
    e << "using namespace tng;\n\n";

    e << "std::shared_ptr<server::DeviceClass> " << k << "::make_class()\n{\n"
      << "    auto cls = server::DeviceClass::make<" << k << ">(" << quote(k) << ", " << quote(def.description)
      << ");\n";
    for (const auto& c : def.commands) {
        e << "    cls->command(" << quote(c.name) << ", &" << k << "::" << snake_case(c.name) << ", "
          << quote(c.description);
        if (!c.allowed_states.empty())
            e << ", {" << states_list(c.allowed_states, "DeviceState::") << "}";
        e << ");\n";
    }
    for (const auto& a : def.attributes) {
        const auto n = snake_case(a.name);
        e << "    cls->attribute<" << k << ">({.name = " << quote(a.name)
          << ", .writable = AttrWritable::" << to_string(a.writable)
          << ", .element_type = AttrElementType::" << to_string(a.element_type)
          << ", .format = AttrFormat::" << to_string(a.format) << ", .max_dim_x = " << std::to_string(a.max_dim_x)
          << ", .max_dim_y = " << std::to_string(a.max_dim_y) << ", .description = " << quote(a.description)
          << ", .unit = " << quote(a.unit) << "},\n"
          << "                        "
          << (a.writable != AttrWritable::Write ? "&" + k + "::read_" + n : std::string("nullptr"));
        if (a.writable != AttrWritable::Read)
            e << ", &" << k << "::write_" << n;
        e << ");\n";
    }
    for (const auto& p : def.device_properties) {
        e << "    cls->property({" << quote(p.name) << ", server::PropertyType::" << property_enum(p.type) << ", {";
        for (std::size_t i = 0; i < p.default_values.size(); ++i)
            e << (i ? ", " : "") << quote(p.default_values[i]);
        e << "}, " << quote(p.description) << "});\n";
    }
    e << "    return cls;\n}\n\n";

    e << "void " << k << "::init_device()\n{\n";
    for (const auto& p : def.device_properties) {
        const auto lit = quote(p.name);
        e << "    " << member_of(p) << " = properties().has(" << lit << ") ? properties()." << property_getter(p.type)
          << "(" << lit << ") : " << cpp_property_type(p.type) << "{};\n";
    }
    e.region("    ", k + ".init");
    e << "}\n\n";

    e << "void " << k << "::delete_device()\n{\n";
    e.region("    ", k + ".delete");
    e << "}\n";

    for (const auto& c : def.commands) {
        e << "\n";
        if (!c.description.empty())
            e << "// " << comment_text(c.description) << "\n";
        e << command_signature(c, k + "::") << "\n{\n";
        if (c.out_type != TypeTag::DevVoid)
            e << "    " << cpp_type(c.out_type) << " argout{};\n";
        e.region("    ", "cmd." + c.name + ".body");
        if (c.out_type != TypeTag::DevVoid)
            e << "    return argout;\n";
        e << "}\n";
    }

    for (const auto& a : def.attributes) {
        const auto n = snake_case(a.name);
        if (a.writable != AttrWritable::Write) {
            e << "\nAttributeValue " << k << "::read_" << n << "()\n{\n"
              << "    AttributeValue reading = " << empty_reading(a) << ";\n";
            e.region("    ", "attr." + a.name + ".read");
            e << "    return reading;\n}\n";
        }
        if (a.writable != AttrWritable::Read) {
            e << "\nvoid " << k << "::write_" << n << "(const AttributeValue& w)\n{\n";
            e.region("    ", "attr." + a.name + ".write");
            e << "}\n";
        }
    }
    e << "\n";
    e.region("", k + ".extra");
    return std::move(e).str();
}

std::string render_main(const ClassDefinition& def)
{
    const auto& k = def.class_name;
    Emitter e(nullptr);
    e << banner(def) << "#include \"" << k << ".hpp\"\n\n"
      << "#include \"tng/server/runtime.hpp\"\n\n"
      << "int main(int argc, char** argv)\n{\n"
      << "    return tng::server::server_main(argc, argv, {" << k << "::make_class()});\n}\n";
    return std::move(e).str();
}

std::string render_html(const ClassDefinition& def)
{
    const auto k = html_escape(def.class_name);
    std::ostringstream h;
    h << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>" << k << " device class</title>\n"
      << "<style>body{font-family:sans-serif}table{border-collapse:collapse}"
         "td,th{border:1px solid #999;padding:2px 8px;text-align:left}</style>\n"
      << "</head>\n<body>\n<h1>" << k << "</h1>\n<p>" << html_escape(def.description) << "</p>\n"
      << "<p>Generated from " << html_escape(def.source_name) << ".</p>\n";

    h << "<h2>States</h2>\n<table>\n<tr><th>State</th><th>Description</th></tr>\n";
    for (const auto& s : def.states)
        h << "<tr><td>" << to_string(s.state) << "</td><td>" << html_escape(s.description) << "</td></tr>\n";
    h << "</table>\n";

    h << "<h2>Commands</h2>\n<table>\n<tr><th>Name</th><th>Input</th><th>Output</th><th>Allowed in</th>"
         "<th>Description</th></tr>\n";
    // the framework commands are part of every class
    h << "<tr><td>State</td><td>DevVoid</td><td>DevState</td><td>any</td><td>Current device state</td></tr>\n"
      << "<tr><td>Status</td><td>DevVoid</td><td>DevString</td><td>any</td><td>Current device status</td></tr>\n"
      << "<tr><td>Init</td><td>DevVoid</td><td>DevVoid</td><td>any</td><td>Re-read properties and re-initialise</td></tr>\n";
    for (const auto& c : def.commands)
        h << "<tr><td>" << html_escape(c.name) << "</td><td>" << to_string(c.in_type) << "</td><td>"
          << to_string(c.out_type) << "</td><td>"
          << (c.allowed_states.empty() ? std::string("any") : states_list(c.allowed_states, "")) << "</td><td>"
          << html_escape(c.description) << "</td></tr>\n";
    h << "</table>\n";

    h << "<h2>Attributes</h2>\n<table>\n<tr><th>Name</th><th>Type</th><th>Format</th><th>Access</th>"
         "<th>Max dims</th><th>Unit</th><th>Description</th></tr>\n";
    for (const auto& a : def.attributes)
        h << "<tr><td>" << html_escape(a.name) << "</td><td>" << to_string(a.element_type) << "</td><td>"
          << to_string(a.format) << "</td><td>" << to_string(a.writable) << "</td><td>" << a.max_dim_x << " x "
          << a.max_dim_y << "</td><td>" << html_escape(a.unit) << "</td><td>" << html_escape(a.description)
          << "</td></tr>\n";
    h << "</table>\n";

    h << "<h2>Device properties</h2>\n<table>\n<tr><th>Name</th><th>Type</th><th>Default</th>"
         "<th>Description</th></tr>\n";
    for (const auto& p : def.device_properties) {
        std::string d;
        for (std::size_t i = 0; i < p.default_values.size(); ++i)
            d += (i ? ", " : "") + html_escape(p.default_values[i]);
        h << "<tr><td>" << html_escape(p.name) << "</td><td>" << property_type_name(p.type) << "</td><td>" << d
          << "</td><td>" << html_escape(p.description) << "</td></tr>\n";
    }
    h << "</table>\n</body>\n</html>\n";
    return h.str();
}

std::optional<std::string> read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text)
{
    auto tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << text;
        out.flush();
        if (!out)
            throw_dev_failed(reason::IoFailure, "cannot write " + tmp.string(), "pogo");
    }
    std::error_code ec;
    fs::rename(tmp, p, ec);
    if (ec)
        throw_dev_failed(reason::IoFailure, "cannot rename " + tmp.string() + ": " + ec.message(), "pogo");
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw_dev_failed(reason::IoFailure, "cannot create directory " + dir.string(), "pogo");
}

bool blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

} // namespace

std::vector<GeneratedFile> render(const ClassDefinition& def, const std::map<std::string, RegionMap>& regions)
{
    const auto& k = def.class_name;
    auto find = [&](const std::string& file) -> const RegionMap* {
        auto it = regions.find(file);
        return it == regions.end() ? nullptr : &it->second;
    };
    return {
        {k + ".hpp", render_header(def, find(k + ".hpp"))},
        {k + ".cpp", render_source(def, find(k + ".cpp"))},
        {k + "_main.cpp", render_main(def)},
        {k + ".html", render_html(def)},
    };
}

WriteReport generate(const ClassDefinition& def, const fs::path& out_dir)
{
    auto files = render(def);
    for (const auto& f : files) {
        auto existing = read_file(out_dir / f.name);
        if (existing && contains_markers(*existing))
            throw_dev_failed(reason::WouldOverwrite,
                             (out_dir / f.name).string() + " holds protected regions; use regenerate", "pogo");
    }
    ensure_dir(out_dir);
    WriteReport report;
    for (const auto& f : files) {
        write_file(out_dir / f.name, f.content);
        report.written.push_back(f.name);
    }
    return report;
}

WriteReport regenerate(const ClassDefinition& def, const fs::path& dir)
{
    std::map<std::string, RegionMap> old_regions;
    std::map<std::string, std::string> old_text;
    for (const auto& f : render(def)) {
        auto existing = read_file(dir / f.name);
        if (!existing)
            continue;
        old_regions[f.name] = scan_regions(*existing, f.name);
        old_text[f.name] = std::move(*existing);
    }

    auto files = render(def, old_regions);
    WriteReport report;
    for (const auto& f : files) {
        auto it = old_regions.find(f.name);
        if (it == old_regions.end())
            continue;
        const auto kept = scan_regions(f.content, f.name);
        for (const auto& [id, content] : it->second)
            if (!kept.count(id) && !blank(content))
                report.orphans.push_back({f.name, id, content});
    }

    ensure_dir(dir);
    if (!report.orphans.empty()) {
        std::string text = read_file(dir / kOrphanFile).value_or("");
        for (const auto& o : report.orphans)
            text += "=== " + o.file + " " + o.id + "\n" + o.content + "=== end " + o.id + "\n";
        write_file(dir / kOrphanFile, text);
    }
    for (const auto& f : files) {
        auto it = old_text.find(f.name);
        if (it != old_text.end() && it->second == f.content)
            continue;
        write_file(dir / f.name, f.content);
        report.written.push_back(f.name);
    }
    return report;
}

} // namespace tng::pogo
