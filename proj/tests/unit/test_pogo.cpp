#include <doctest.h>

#include "conformance.hpp"
#include "expect.hpp"
#include "in_process_db.hpp"
#include "pogo_fuzz.hpp"
#include "processes.hpp"
#include "tng/pogo/generator.hpp"

#include <regex>

using namespace tng;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"({
  "class": "TypesEcho",
  "commands": [
    {"name": "EchoLong", "in_type": "DevLong", "out_type": "DevLong"}
  ]
})";

// line of the first occurrence of `needle`, counted independently of the parser
int line_of(std::string_view text, std::string_view needle)
{
    auto pos = text.find(needle);
    REQUIRE(pos != std::string_view::npos);
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

std::string failure_of(std::string_view text)
{
    try {
        pogo::parse_definition(text, "def.json");
    } catch (const DevFailed& e) {
        return e.reason() + " " + e.errors().front().description;
    }
    return "parsed";
}

fs::path shipped(const std::string& name) { return fs::path(TNG_SOURCE_DIR) / "devices" / name; }

std::vector<fs::path> corpus()
{
    std::vector<fs::path> out = {shipped("typesecho/typesecho.json"), shipped("simplc/simplc.json")};
    for (const auto& e : fs::directory_iterator(fs::path(TNG_SOURCE_DIR) / "tests/data/pogo"))
        if (e.path().extension() == ".json")
            out.push_back(e.path());
    std::sort(out.begin() + 2, out.end());
    return out;
}

} // namespace

TEST_CASE("definition parsing and diagnostics")
{
    auto def = pogo::parse_definition(kMinimal);
    CHECK(def.class_name == "TypesEcho");
    REQUIRE(def.commands.size() == 1);
    CHECK(def.commands[0].in_type == TypeTag::DevLong);

    SUBCASE("unknown type carries its line")
    {
        std::string text = kMinimal;
        text.replace(text.find("\"DevLong\""), 9, "\"DevBanana\"");
        auto msg = failure_of(text);
        CHECK(msg.rfind("UNKNOWN_TYPE", 0) == 0);
        CHECK(msg.find("def.json:" + std::to_string(line_of(text, "DevBanana")) + ":") != std::string::npos);
    }
    SUBCASE("duplicates, case-insensitively")
    {
        const char* text = R"({"class": "A",
  "attributes": [
    {"name": "pos", "type": "DevDouble"},
    {"name": "POS", "type": "DevLong"}
  ]})";
        auto msg = failure_of(text);
        CHECK(msg.rfind("DUPLICATE_NAME", 0) == 0);
        CHECK(msg.find("def.json:4:") != std::string::npos);
    }
    SUBCASE("framework commands cannot be redefined")
    {
        for (const char* n : {"State", "status", "Init"}) {
            auto text = std::string(R"({"class": "A", "commands": [{"name": ")") + n + R"("}]})";
            CHECK(failure_of(text).rfind("RESERVED_NAME", 0) == 0);
        }
    }
    SUBCASE("syntax errors carry their line")
    {
        const char* text = "{\n  \"class\": \"A\",\n  \"commands\": [\n    {\"name\": \"X\" \"in_type\": 1}\n  ]\n}\n";
        auto msg = failure_of(text);
        CHECK(msg.rfind("PARSE_ERROR", 0) == 0);
        CHECK(msg.find("def.json:4:") != std::string::npos);
    }
    SUBCASE("unknown keys and bad shapes are rejected")
    {
        CHECK(failure_of(R"({"class": "A", "comands": []})").rfind("PARSE_ERROR", 0) == 0);
        CHECK(failure_of(R"({"class": "A b"})").rfind("PARSE_ERROR", 0) == 0);
        CHECK(failure_of(R"({"class": "A", "attributes": [{"name": "x", "type": "DevDouble", "format": "Spectrum"}]})")
                  .rfind("PARSE_ERROR", 0) == 0);
        CHECK(failure_of(R"({"class": "A", "attributes": [{"name": "x", "type": "DevFloat"}]})")
                  .rfind("UNKNOWN_TYPE", 0) == 0);
        CHECK(failure_of(R"({"class": "A", "commands": [{"name": "X", "allowed_states": ["SLEEPY"]}]})")
                  .rfind("UNKNOWN_TYPE", 0) == 0);
    }
    SUBCASE("json round trip")
    {
        for (const auto& f : corpus()) {
            auto d = pogo::load_definition(f);
            auto again = pogo::parse_definition(pogo::definition_to_json(d), d.source_name);
            CHECK(again.commands == d.commands);
            CHECK(again.attributes == d.attributes);
            CHECK(pogo::render(again)[1].content == pogo::render(d)[1].content);
        }
    }
}

TEST_CASE("generated files have one region per handler and a complete doc page")
{
    auto def = pogo::load_definition(shipped("typesecho/typesecho.json"));
    auto files = pogo::render(def);
    REQUIRE(files.size() == 4);
    const auto& cpp = files[1].content;
    for (const auto& c : def.commands) {
        const std::regex begin("PROTECTED-REGION BEGIN cmd\\." + c.name + "\\.body\n");
        CHECK(std::distance(std::sregex_iterator(cpp.begin(), cpp.end(), begin), std::sregex_iterator()) == 1);
    }
    for (const auto& a : def.attributes) {
        CHECK(pogo::scan_regions(cpp).count("attr." + a.name + ".read") == 1);
        CHECK(pogo::scan_regions(cpp).count("attr." + a.name + ".write") == 1);
    }
    CHECK(pogo::scan_regions(cpp).count("TypesEcho.init") == 1);
    const auto& html = files[3].content;
    CHECK(files[3].name == "TypesEcho.html");
    for (const auto& c : def.commands) {
        const auto row = "<tr><td>" + c.name + "</td><td>" + std::string(to_string(c.in_type)) + "</td><td>" +
                         std::string(to_string(c.out_type)) + "</td>";
        CHECK_MESSAGE(html.find(row) != std::string::npos, c.name);
    }
    for (const auto& a : def.attributes)
        CHECK(html.find("<tr><td>" + a.name + "</td>") != std::string::npos);
}

TEST_CASE("region scanning rejects corrupt markers")
{
    CHECK(pogo::scan_regions("a\n// PROTECTED-REGION BEGIN x\nbody\n// PROTECTED-REGION END x\n").at("x") == "body\n");
    CHECK_REASON(pogo::scan_regions("// PROTECTED-REGION BEGIN x\n"), reason::MarkerCorrupt);
    CHECK_REASON(pogo::scan_regions("// PROTECTED-REGION END x\n"), reason::MarkerCorrupt);
    CHECK_REASON(pogo::scan_regions("// PROTECTED-REGION BEGIN x\n// PROTECTED-REGION END y\n"), reason::MarkerCorrupt);
    CHECK_REASON(pogo::scan_regions("// PROTECTED-REGION BEGIN x\n// PROTECTED-REGION BEGIN y\n"), reason::MarkerCorrupt);
    CHECK_REASON(pogo::scan_regions("int a; // PROTECTED-REGION BEGIN x\n"), reason::MarkerCorrupt);
    CHECK_REASON(pogo::scan_regions("// PROTECTED-REGION BEGIN x\n// PROTECTED-REGION END x\n"
                                    "// PROTECTED-REGION BEGIN x\n// PROTECTED-REGION END x\n"),
                 reason::MarkerCorrupt);
}

TEST_CASE("generate, edit, regenerate")
{
    test::TempDir dir;
    auto def = pogo::parse_definition(kMinimal, "typesecho.json");
    pogo::generate(def, dir.path());
    const auto cpp = dir.path() / "TypesEcho.cpp";

    SUBCASE("regenerating an untouched skeleton changes nothing")
    {
        auto before = test::read_text(cpp);
        auto report = pogo::regenerate(def, dir.path());
        CHECK(report.written.empty());
        CHECK(test::read_text(cpp) == before);
    }
    SUBCASE("generate refuses to overwrite protected code")
    {
        CHECK_REASON(pogo::generate(def, dir.path()), reason::WouldOverwrite);
    }
    SUBCASE("a filled body survives a new command, which starts empty")
    {
        auto text = test::read_text(cpp);
        REQUIRE(test::set_region_text(text, "cmd.EchoLong.body", "    argout = argin;\n"));
        test::write_text(cpp, text);
        def.commands.push_back({"EchoShort", TypeTag::DevShort, TypeTag::DevShort, "", {}});
        pogo::regenerate(def, dir.path());
        auto after = test::read_text(cpp);
        CHECK(test::region_text(after, "cmd.EchoLong.body") == "    argout = argin;\n");
        CHECK(test::region_text(after, "cmd.EchoShort.body") == "");
        // and a second pass is a fixed point
        CHECK(pogo::regenerate(def, dir.path()).written.empty());
    }
    SUBCASE("a removed command's body is quarantined")
    {
        auto text = test::read_text(cpp);
        test::set_region_text(text, "cmd.EchoLong.body", "    argout = argin * 2; // keep me\n");
        test::write_text(cpp, text);
        def.commands.clear();
        auto report = pogo::regenerate(def, dir.path());
        REQUIRE(report.orphans.size() == 1);
        CHECK(report.orphans[0].id == "cmd.EchoLong.body");
        CHECK(test::read_text(cpp).find("keep me") == std::string::npos);
        CHECK(test::read_text(dir.path() / pogo::kOrphanFile).find("    argout = argin * 2; // keep me\n") !=
              std::string::npos);
    }
    SUBCASE("corrupt markers abort before anything is written")
    {
        auto hpp = dir.path() / "TypesEcho.hpp";
        auto corrupt = test::read_text(cpp);
        corrupt.erase(corrupt.find("// PROTECTED-REGION END cmd.EchoLong.body"), 3);
        test::write_text(cpp, corrupt);
        auto hpp_before = test::read_text(hpp);
        def.class_name = "TypesEcho";
        def.commands.push_back({"EchoShort", TypeTag::DevShort, TypeTag::DevShort, "", {}});
        CHECK_REASON(pogo::regenerate(def, dir.path()), reason::MarkerCorrupt);
        CHECK(test::read_text(cpp) == corrupt);
        CHECK(test::read_text(hpp) == hpp_before);
    }
}

TEST_CASE("shipped device sources are exactly what regeneration produces")
{
    for (const char* name : {"typesecho", "simplc"}) {
        test::TempDir dir;
        const auto src = shipped(name);
        for (const auto& e : fs::directory_iterator(src))
            fs::copy(e.path(), dir.path() / e.path().filename());
        auto def = pogo::load_definition(src / (std::string(name) + ".json"));
        auto report = pogo::regenerate(def, dir.path());
        CHECK_MESSAGE(report.written.empty(), name);
        CHECK(report.orphans.empty());
        for (const auto& e : fs::directory_iterator(src))
            CHECK_MESSAGE(test::read_text(e.path()) == test::read_text(dir.path() / e.path().filename()),
                          e.path().string());
    }
}

TEST_CASE("protected regions survive randomized edits and definition changes")
{
    std::mt19937_64 rng(0x5eed);
    test::PreservationResult total;
    for (int trial = 0; trial < 100; ++trial) {
        test::TempDir dir;
        auto r = test::preservation_trial(rng, trial, dir.path());
        total.edited += r.edited;
        total.kept += r.kept;
        total.orphaned += r.orphaned;
        total.lost += r.lost;
    }
    MESSAGE("edited " << total.edited << ", kept " << total.kept << ", quarantined " << total.orphaned);
    CHECK(total.lost == 0);
    CHECK(total.kept + total.orphaned == total.edited);
    CHECK(total.orphaned > 0);
}

TEST_CASE("untouched skeletons for the whole corpus start and describe themselves")
{
    test::InProcessDb db;
    test::TempDir dir;
    auto dbc = db.client();
    auto defs = corpus();
    CHECK(defs.size() >= 6);
    for (const auto& f : defs) {
        auto def = pogo::load_definition(f);
        const auto dev = "conf/" + to_lower(def.class_name) + "/1";
        dbc->add_server({def.class_name + "/conf", "localhost", 0, {{def.class_name, {dev}}}});
        test::ServerProcess srv(std::string(TNG_SKELETON_DIR) + "/" + def.class_name, "conf", db.endpoint(), dir);
        client::DeviceProxy p(dev, dbc);
        CHECK_MESSAGE(p.state() == DeviceState::ON, def.class_name);
        auto problems = test::describe_conformance(p, def);
        for (const auto& pr : problems)
            MESSAGE(def.class_name << ": " << pr);
        CHECK(problems.empty());
    }
}
