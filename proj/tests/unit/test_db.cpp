#include <doctest.h>

#include "expect.hpp"
#include "in_process_db.hpp"
#include "tng/core/reasons.hpp"
#include "tng/db/protocol.hpp"
#include "tng/db/store.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <regex>
#include <set>

using namespace tng;
using db::ClassBinding;
using db::DatabaseStore;
using db::Property;
using db::ServerRecord;

namespace {

ServerRecord echo_server()
{
    return {"TypesEcho/test", "hostA", 1, {{"TypesEcho", {"sr/test/echo1"}}}};
}

std::vector<std::string> user_devices(const DatabaseStore& s)
{
    std::vector<std::string> out;
    for (const auto& [n, d] : s.snapshot().devices)
        if (d.class_name != db::kAdminClass && d.class_name != db::kDatabaseClass)
            out.push_back(n.str());
    return out;
}

// Oracle for browse: translate the glob into an ECMAScript regex and scan linearly.
bool regex_oracle(const std::string& pattern, const std::string& name)
{
    std::string rx;
    for (char c : pattern) {
        if (c == '*')
            rx += "[^/]*";
        else if (std::isalnum(static_cast<unsigned char>(c)))
            rx += c;
        else
            rx += std::string("\\") + c;
    }
    return std::regex_match(name, std::regex(rx, std::regex::icase));
}

} // namespace

TEST_CASE("a fresh database holds only its own records")
{
    DatabaseStore s;
    s.load();
    auto st = s.snapshot();
    CHECK(st.servers.size() == 1);
    CHECK(st.servers.begin()->second.server_id == db::kDatabaseServer);
    CHECK(s.import_device(db::kDatabaseDevice).class_name == db::kDatabaseClass);
    CHECK(s.get_device_list(db::kDatabaseServer, db::kDatabaseClass) == std::vector<std::string>{"sys/database/2"});
}

TEST_CASE("add_server registers bindings and starts devices unexported")
{
    DatabaseStore s;
    s.add_server(echo_server());
    auto info = s.get_server_info("typesecho/TEST");
    CHECK(info == echo_server());
    CHECK(s.get_device_list("TypesEcho/test", "TypesEcho") == std::vector<std::string>{"sr/test/echo1"});
    CHECK(s.get_device_list("Nobody/none", "TypesEcho").empty());
    auto rec = s.import_device("SR/Test/Echo1");
    CHECK_FALSE(rec.exported);
    CHECK(rec.endpoint.empty());
    CHECK(rec.server_id == "TypesEcho/test");
    // the admin device comes for free
    CHECK(s.import_device("dserver/typesecho/test").class_name == db::kAdminClass);
    CHECK(s.get_device_list("TypesEcho/test", db::kAdminClass) == std::vector<std::string>{"dserver/typesecho/test"});
}

TEST_CASE("re-adding a server replaces its bindings")
{
    DatabaseStore s;
    s.add_server(echo_server());
    s.export_device("sr/test/echo1", "h:1", "TypesEcho/test");
    s.add_server({"TypesEcho/test", "hostA", 2, {{"TypesEcho", {"sr/test/echo1", "sr/test/echo2"}}}});
    CHECK(s.get_device_list("TypesEcho/test", "TypesEcho").size() == 2);
    CHECK(s.import_device("sr/test/echo1").exported); // kept device keeps its export
    s.add_server({"TypesEcho/test", "hostA", 2, {{"TypesEcho", {"sr/test/echo2"}}}});
    CHECK_REASON(s.import_device("sr/test/echo1"), reason::DeviceNotDefined);
    CHECK(user_devices(s) == std::vector<std::string>{"sr/test/echo2"});
}

TEST_CASE("multi-class servers keep each class's devices apart")
{
    DatabaseStore s;
    s.add_server({"Multi/1", "h", 0, {{"A", {"x/a/1", "x/a/2"}}, {"B", {"x/b/1"}}}});
    CHECK(s.get_device_list("Multi/1", "A") == std::vector<std::string>{"x/a/1", "x/a/2"});
    CHECK(s.get_device_list("Multi/1", "b") == std::vector<std::string>{"x/b/1"});
    CHECK(s.get_device_list("Multi/1", "C").empty());
}

TEST_CASE("add_server rejects conflicts and malformed input")
{
    DatabaseStore s;
    s.add_server(echo_server());
    CHECK_REASON(s.add_server({"Other/1", "h", 0, {{"TypesEcho", {"sr/test/echo1"}}}}), reason::DeviceOwned);
    CHECK_REASON(s.add_server({"Other/1", "h", 0, {{"TypesEcho", {}}}}), reason::ClassEmpty);
    CHECK_REASON(s.add_server({"Other/1", "h", 0, {{"TypesEcho", {"bad name"}}}}), reason::MalformedName);
    CHECK_REASON(s.add_server({"NoInstance", "h", 0, {{"C", {"a/b/c"}}}}), reason::MalformedName);
    CHECK_REASON(s.add_server({"Other/1", "h", 0, {{"C", {db::kDatabaseDevice}}}}), reason::DeviceOwned);
    // the failed calls changed nothing
    CHECK(s.get_server_list("*").size() == 2);
}

TEST_CASE("export and import")
{
    DatabaseStore s;
    s.add_server(echo_server());
    s.export_device("sr/test/echo1", "127.0.0.1:4000", "TypesEcho/test");
    auto rec = s.import_device("sr/test/echo1");
    CHECK(rec.exported);
    CHECK(rec.endpoint == "127.0.0.1:4000");
    CHECK(rec.export_time_ms > 0);
    s.export_device("sr/test/echo1", "127.0.0.1:4001", "TypesEcho/test");
    CHECK(s.import_device("sr/test/echo1").endpoint == "127.0.0.1:4001");
    CHECK_REASON(s.export_device("no/such/dev", "h:1", "TypesEcho/test"), reason::DeviceNotDefined);
    CHECK_REASON(s.import_device("nope/nope/nope"), reason::DeviceNotDefined);
    CHECK_REASON(s.export_device("sr/test/echo1", "h:1", "Thief/1"), reason::DeviceOwned);
    s.unexport_server("TypesEcho/test");
    CHECK_FALSE(s.import_device("sr/test/echo1").exported);
    CHECK(s.import_device("sr/test/echo1").endpoint == "127.0.0.1:4001");
}

TEST_CASE("properties")
{
    DatabaseStore s;
    s.put_property("sr/plc/c1", {{"InputAddresses", {"DB1.0", "DB1.2"}}});
    auto got = s.get_property("SR/PLC/C1", {"inputaddresses", "Missing"});
    REQUIRE(got.size() == 2);
    CHECK(got[0].values == std::vector<std::string>{"DB1.0", "DB1.2"});
    CHECK(got[1].values.empty());
    CHECK(s.get_property_list("sr/plc/c1") == std::vector<std::string>{"InputAddresses"});
    s.put_property("sr/plc/c1", {{"INPUTADDRESSES", {"DB2.0"}}});
    CHECK(s.get_property("sr/plc/c1", {"InputAddresses"})[0].values == std::vector<std::string>{"DB2.0"});
    s.delete_property("sr/plc/c1", {"InputAddresses"});
    s.delete_property("sr/plc/c1", {"InputAddresses"});
    CHECK(s.get_property("sr/plc/c1", {"InputAddresses"})[0].values.empty());
    CHECK_REASON(s.get_property("", {"x"}), reason::MalformedName);
}

TEST_CASE("browse examples")
{
    DatabaseStore s;
    s.add_server(echo_server());
    auto sr = s.browse_devices("sr/*/*");
    CHECK(sr == std::vector<std::string>{"sr/test/echo1"});
    CHECK(s.browse_devices("*/*/*").size() == 4); // echo1, its admin, the database and its admin
    CHECK(s.browse_devices("SR/T*/*1") == sr);
    CHECK_REASON(s.browse_devices("sr/*"), reason::MalformedPattern);
    CHECK_REASON(s.browse_devices("sr//x"), reason::MalformedPattern);
    CHECK(s.get_server_list("Types*") == std::vector<std::string>{"TypesEcho/test"});
    CHECK(s.get_class_list("Types*") == std::vector<std::string>{"TypesEcho"});
    auto hosts = s.get_host_list("*");
    CHECK(std::count(hosts.begin(), hosts.end(), "hostA") == 1);
}

TEST_CASE("browse agrees with a linear regex scan on random fixtures")
{
    std::mt19937 rng(1234);
    const std::vector<std::string> parts = {"sr", "id", "ab", "Sr", "a", "x1", "motor", "m", "c1"};
    auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
    for (int trial = 0; trial < 40; ++trial) {
        DatabaseStore s;
        std::set<std::string> names;
        std::vector<std::string> devs;
        for (int i = 0; i < 25; ++i) {
            auto n = to_lower(pick(parts) + "/" + pick(parts) + "/" + pick(parts) + std::to_string(i % 3));
            if (names.insert(n).second)
                devs.push_back(n);
        }
        s.add_server({"Fix/" + std::to_string(trial), "h", 0, {{"C", devs}}});
        std::vector<std::string> all;
        for (const auto& [n, d] : s.snapshot().devices)
            all.push_back(n.str());
        for (int q = 0; q < 30; ++q) {
            auto part = [&] {
                switch (rng() % 4) {
                case 0: return std::string("*");
                case 1: return pick(parts);
                case 2: return pick(parts).substr(0, 1) + "*";
                default: return "*" + pick(parts).substr(pick(parts).size() > 1 ? 1 : 0);
                }
            };
            auto pattern = part() + "/" + part() + "/" + part();
            std::vector<std::string> expected;
            for (const auto& n : all)
                if (regex_oracle(pattern, n))
                    expected.push_back(n);
            CHECK_MESSAGE(s.browse_devices(pattern) == expected, pattern);
        }
    }
}

TEST_CASE("glob edge cases")
{
    CHECK(db::glob_match("*", ""));
    CHECK(db::glob_match("a*b*c", "aXXbYYc"));
    CHECK_FALSE(db::glob_match("a*b*c", "aXXbYY"));
    CHECK(db::glob_match("**", "abc"));
    CHECK(db::glob_match("AbC", "aBc"));
    CHECK_FALSE(db::glob_match("abc", "abcd"));
}

TEST_CASE("persistence round-trips randomized mutation sequences")
{
    test::TempDir dir;
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const auto path = dir.file("db" + std::to_string(trial) + ".txt");
        DatabaseStore s(path);
        s.load();
        for (int step = 0; step < 30; ++step) {
            const auto srv = "Srv/" + std::to_string(rng() % 4);
            try {
                switch (rng() % 6) {
                case 0: {
                    std::vector<std::string> devs;
                    for (unsigned i = 0, n = 1 + rng() % 3; i < n; ++i)
                        devs.push_back("d" + srv.substr(4) + "/f/" + std::to_string(rng() % 5));
                    std::sort(devs.begin(), devs.end());
                    devs.erase(std::unique(devs.begin(), devs.end()), devs.end());
                    s.add_server({srv, "host" + std::to_string(rng() % 2), static_cast<std::uint32_t>(rng() % 3),
                                  {{"Cls" + std::to_string(rng() % 2), devs}}});
                    break;
                }
                case 1: s.delete_server(srv); break;
                case 2: {
                    auto names = s.browse_devices("*/*/*");
                    auto n = names[rng() % names.size()];
                    s.export_device(n, "10.0.0." + std::to_string(rng() % 9) + ":" + std::to_string(1000 + rng() % 99),
                                    s.import_device(n).server_id);
                    break;
                }
                case 3:
                    s.put_property("owner/" + std::to_string(rng() % 3) + "/x",
                                   {{"P" + std::to_string(rng() % 3), {"v \"quoted\"", "tab\there", "ünï"}}});
                    break;
                case 4: s.delete_property("owner/" + std::to_string(rng() % 3) + "/x", {"p1"}); break;
                default: s.unexport_server(srv); break;
                }
            } catch (const DevFailed&) {
                // refused mutations are part of the sequence
            }
            s.snapshot().check_integrity();
        }
        DatabaseStore reloaded(path);
        reloaded.load();
        CHECK(reloaded.snapshot() == s.snapshot());
    }
}

TEST_CASE("missing or empty file loads the self records; corrupt file is refused")
{
    test::TempDir dir;
    DatabaseStore missing(dir.file("absent.txt"));
    missing.load();
    CHECK(missing.snapshot().servers.size() == 1);

    {
        std::ofstream(dir.file("empty.txt"));
    }
    DatabaseStore empty(dir.file("empty.txt"));
    empty.load();
    CHECK(empty.snapshot() == missing.snapshot());

    {
        std::ofstream out(dir.file("bad.txt"));
        out << "[servers]\n\"A/1\" \"h\" 0 \"C\"\n[devices]\n\"a/b/c\" \"C\" \"A/1\" 7 \"\" 0\n";
    }
    DatabaseStore bad(dir.file("bad.txt"));
    try {
        bad.load();
        FAIL("expected CORRUPT_FILE");
    } catch (const DevFailed& e) {
        CHECK(e.reason() == reason::CorruptFile);
        CHECK(std::string(e.errors().front().description).find("line 4") != std::string::npos);
    }

    {
        std::ofstream out(dir.file("dangling.txt"));
        out << "[servers]\n\"A/1\" \"h\" 0 \"C\"\n";
    }
    DatabaseStore dangling(dir.file("dangling.txt"));
    CHECK_REASON(dangling.load(), reason::CorruptFile);
}

TEST_CASE("file grammar matches the documented layout")
{
    DatabaseStore s;
    s.add_server(echo_server());
    s.put_property("sr/plc/c1", {{"InputAddresses", {"DB1.0", "DB1.2"}}});
    const auto text = db::serialize_state(s.snapshot());
    CHECK(text.find("\"TypesEcho/test\" \"hostA\" 1 \"TypesEcho\"\n") != std::string::npos);
    CHECK(text.find("\"sr/test/echo1\" \"TypesEcho\" \"TypesEcho/test\" 0 \"\" 0\n") != std::string::npos);
    CHECK(text.find("\"sr/plc/c1\" \"InputAddresses\" \"DB1.0\" \"DB1.2\"\n") != std::string::npos);
    CHECK(db::parse_state(text) == s.snapshot());
}

TEST_CASE("packed argument layouts round-trip")
{
    ServerRecord srv{"X/1", "h", 3, {{"A", {"a/b/c", "a/b/d"}}, {"B", {"q/q/q"}}}};
    CHECK(db::protocol::unpack_server(db::protocol::pack_server(srv)) == srv);
    db::DeviceRecord d{"a/b/c", "A", "X/1", true, "h:5", 1234};
    CHECK(db::protocol::unpack_device(db::protocol::pack_device(d)) == d);
    std::vector<Property> props{{"p", {"1", "2"}}, {"q", {}}};
    std::string owner;
    CHECK(db::protocol::unpack_properties(db::protocol::pack_properties("o/w/n", props), &owner) == props);
    CHECK(owner == "o/w/n");
    CHECK_REASON(db::protocol::unpack_server({"X/1", "h", "0", "2", "A"}), reason::MalformedArgument);
    CHECK_REASON(db::protocol::unpack_properties({"o", "1", "p", "5", "v"}), reason::MalformedArgument);
}

TEST_CASE("the database is a device reachable through the client wrapper")
{
    test::InProcessDb fixture;
    auto dbc = fixture.client();
    dbc->add_server(echo_server());
    CHECK(dbc->get_server_info("TypesEcho/test") == echo_server());
    CHECK(dbc->get_device_list("TypesEcho/test", "TypesEcho") == std::vector<std::string>{"sr/test/echo1"});
    dbc->export_device("sr/test/echo1", "127.0.0.1:4000", "TypesEcho/test");
    CHECK(dbc->import_device("sr/test/echo1").endpoint == "127.0.0.1:4000");
    dbc->put_property("sr/plc/c1", {{"InputAddresses", {"DB1.0", "DB1.2"}}});
    CHECK(dbc->get_property("sr/plc/c1", {"InputAddresses"})[0].values.size() == 2);
    CHECK_REASON(dbc->import_device("nope/nope/nope"), reason::DeviceNotDefined);
    CHECK_REASON(dbc->get_server_info("Nope/1"), reason::ServerNotDefined);
    CHECK_REASON(dbc->browse_devices("bad"), reason::MalformedPattern);

    // it describes itself like any device
    auto cmds = dbc->proxy().command_list_query();
    std::set<std::string> names;
    for (const auto& c : cmds)
        names.insert(c.name);
    for (const char* c : {"State", "Status", "DbAddServer", "DbDeleteServer", "DbGetServerInfo", "DbGetDeviceList",
                          "DbExportDevice", "DbUnExportDevice", "DbUnExportServer", "DbImportDevice", "DbGetProperty",
                          "DbPutProperty", "DbDeleteProperty", "DbGetPropertyList", "DbBrowseDevices",
                          "DbGetServerList", "DbGetHostList", "DbGetClassList"})
        CHECK_MESSAGE(names.count(c) == 1, c);
    CHECK(dbc->proxy().state() == DeviceState::ON);
}
