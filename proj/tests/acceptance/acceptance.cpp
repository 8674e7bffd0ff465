// End-to-end acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [criterion numbers...]   (default: all)
//
// Exit status is non-zero when any selected criterion fails.

#include "SimPLC.hpp"
#include "conformance.hpp"
#include "golden.hpp"
#include "hex.hpp"
#include "in_process_db.hpp"
#include "pogo_fuzz.hpp"
#include "processes.hpp"
#include "test_devices.hpp"
#include "value_gen.hpp"

#include "tng/astor/fleet.hpp"
#include "tng/json/value_json.hpp"
#include "tng/pogo/generator.hpp"
#include "tng/starter/naming.hpp"
#include "tng/wire/codec.hpp"

#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <csignal>
#include <iostream>
#include <set>

using namespace tng;
using namespace std::chrono_literals;
using Steady = std::chrono::steady_clock;
namespace fs = std::filesystem;

namespace {

// Pinned limits.
constexpr double kTypesRuntimeS = 30;
constexpr double kFiveProcessRuntimeS = 60;
constexpr double kReconnectRuntimeS = 30;
constexpr int kFuzzValues = 20'000;
constexpr auto kPollPeriod = 100ms;
// the last sample may land just before the suspension; allow for the read loop's granularity
constexpr auto kStaleSlack = 10ms;
constexpr int kPollClients = 50;
constexpr auto kPollWindow = 3s;
constexpr std::uint64_t kMaxPolledExecutions = 31;
constexpr int kSequencingRuns = 20;
constexpr int kPreservationTrials = 100;
constexpr int kGatewayCalls = 1000;
constexpr int kBijectionPerTag = 500;
constexpr double kMinRoundTripsPerS = 500;
constexpr double kMaxMedianMs = 5;

struct Outcome {
    std::vector<std::string> problems;
    std::vector<std::string> facts;

    void check(bool ok, const std::string& what)
    {
        if (!ok)
            problems.push_back(what);
    }
    void note(const std::string& f) { facts.push_back(f); }
};

double seconds_since(Steady::time_point t0) { return std::chrono::duration<double>(Steady::now() - t0).count(); }

std::string fixed(double v, int digits = 2)
{
    std::ostringstream o;
    o << std::fixed << std::setprecision(digits) << v;
    return o.str();
}

template <class F>
bool eventually(F f, std::chrono::milliseconds limit)
{
    const auto deadline = Steady::now() + limit;
    while (Steady::now() < deadline) {
        if (f())
            return true;
        std::this_thread::sleep_for(10ms);
    }
    return f();
}

const std::string kHost = "accdesk";

// ---------------------------------------------------------------- 1

void types(Outcome& o)
{
    const auto t0 = Steady::now();
    o.check(kTypeTagCount == 20, "type tag count is " + std::to_string(kTypeTagCount));
    std::set<std::string> tag_names;
    for (auto t : kAllTypeTags)
        tag_names.insert(std::string(to_string(t)));
    o.check(tag_names.size() == 20, "type tag names are not 20 distinct names");
    std::set<std::string> elements;
    for (auto e : {AttrElementType::DevShort, AttrElementType::DevLong, AttrElementType::DevDouble,
                   AttrElementType::DevString})
        elements.insert(std::string(to_string(e)));
    o.check(elements == std::set<std::string>{"DevShort", "DevLong", "DevDouble", "DevString"},
            "attribute element types differ from short, long, double, string");

    testing::ValueGen gen(0xacce97);
    int failures = 0, n = 0;
    for (int i = 0; i < kFuzzValues; ++i) {
        const auto tag = kAllTypeTags[static_cast<std::size_t>(i) % kTypeTagCount];
        auto v = gen.value(tag, i % 97 == 0 ? 2000 : 24);
        auto bytes = wire::encode_value(v);
        auto d = wire::decode_value(bytes);
        failures += !(d.value == v) || d.consumed != bytes.size() || wire::encoded_size(v) != bytes.size();
        ++n;
    }
    o.check(failures == 0, std::to_string(failures) + " round-trip failures");

    std::ifstream in(TNG_TEST_DATA_DIR "/golden_vectors.txt");
    auto golden = testing::golden_values();
    int vectors = 0, drift = 0;
    std::set<TypeTag> covered;
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#')
            continue;
        const auto name = line.substr(0, line.find(' '));
        const auto bytes = testing::from_hex(line.substr(line.find(' ')));
        auto it = golden.find(name);
        if (it == golden.end() || wire::encode_value(it->second) != bytes ||
            !(wire::decode_value(bytes).value == it->second))
            ++drift;
        else
            covered.insert(it->second.tag());
        ++vectors;
    }
    o.check(vectors >= 20 && drift == 0, std::to_string(drift) + " of " + std::to_string(vectors) + " golden vectors differ");
    o.check(covered.size() == kTypeTagCount, "golden vectors cover " + std::to_string(covered.size()) + " tags");
    const double s = seconds_since(t0);
    o.check(s < kTypesRuntimeS, "took " + fixed(s) + " s");
    o.note(std::to_string(n) + " round trips, " + std::to_string(vectors) + " golden vectors, " + fixed(s) + " s");
}

// ---------------------------------------------------------------- 2

struct DatabaseProcess {
    proc::Child child;
    net::Endpoint endpoint;

    explicit DatabaseProcess(test::TempDir& dir)
    {
        const auto port_file = dir.file("db.port");
        proc::SpawnOptions opts;
        opts.log_file = dir.file("DataBaseds.log");
        child = proc::Child(test::bin("DataBaseds"),
                            {"2", "--port", "0", "--file", dir.file("db.txt"), "--host", "127.0.0.1", "--port-file",
                             port_file},
                            opts);
        auto port = test::wait_port_file(port_file, child);
        if (port == 0)
            throw_dev_failed(reason::IoFailure, "DataBaseds did not come up", "acceptance");
        endpoint = {"127.0.0.1", port};
    }
};

void register_starter(client::Database& db, const std::string& log_dir, const std::string& extra_path = "")
{
    db.add_server({"Starter/" + kHost, kHost, 0, {{"Starter", {starter::starter_device_name(kHost)}}}});
    std::vector<std::string> path{TNG_BIN_DIR};
    if (!extra_path.empty())
        path.push_back(extra_path);
    db.put_property(starter::starter_device_name(kHost),
                    {{"StartDsPath", path}, {"LogDir", {log_dir}}, {"ScanPeriodMs", {"500"}}});
}

void five_processes(Outcome& o)
{
    const auto t0 = Steady::now();
    test::TempDir dir;
    DatabaseProcess dbp(dir);
    auto db = std::make_shared<client::Database>(dbp.endpoint);
    register_starter(*db, dir.path().string());
    db->add_server({"TypesEcho/acc", kHost, 1, {{"TypesEcho", {"acc/echo/1", "acc/echo/2"}}}});
    db->add_server({"SimPLC/acc", kHost, 2, {{"SimPLC", {"acc/plc/1"}}}});
    db->put_property("acc/plc/1", {{"InputAddresses", {"I0", "I1", "I2"}}, {"OutputAddresses", {"Q0", "Q1"}}});
    test::ServerProcess starter(test::bin("Starter"), kHost, dbp.endpoint, dir);

    client::DeviceProxy st(starter::starter_device_name(kHost), db);
    for (const char* id : {"TypesEcho/acc", "SimPLC/acc"})
        st.command_inout("DevStart", std::string(id));
    auto running = [&] { return st.command_inout("DevGetRunningServers").get<std::vector<std::string>>().size() == 2; };
    o.check(eventually(running, 10s), "servers not running via the Starter");

    // every registered device plus each server's admin device
    std::set<std::string> expected;
    for (const auto& id : db->get_server_list("*")) {
        expected.insert(db::admin_device_name(id));
        for (const auto& c : db->get_server_info(id).classes)
            expected.insert(c.devices.begin(), c.devices.end());
    }
    int exported = 0, devices = 0;
    for (const auto& name : expected) {
        ++devices;
        exported += db->import_device(name).exported;
    }
    o.check(devices == 9 && exported == devices && db->browse_devices("*").size() == expected.size(),
            std::to_string(exported) + " of " + std::to_string(devices) + " devices exported");

    // generic client: only what describe says
    testing::ValueGen gen(0x5a5a);
    int executed = 0, echo_calls = 0;
    std::set<std::string> commands;
    for (const char* dev : {"acc/echo/1", "acc/echo/2"}) {
        client::DeviceProxy p(dev, db);
        auto list = p.command_list_query();
        for (const auto& c : list) {
            commands.insert(c.name);
            try {
                if (c.name.rfind("Echo", 0) == 0)
                    continue;
                auto out = p.command_inout(c.name, c.in_type == TypeTag::DevVoid ? TangoValue() : gen.value(c.in_type));
                o.check(out.tag() == c.out_type, c.name + " returned " + std::string(to_string(out.tag())));
                ++executed;
            } catch (const DevFailed& e) {
                o.check(false, c.name + " failed: " + e.reason());
            }
        }
        auto sweep = test::echo_sweep(p, gen, 25);
        echo_calls += sweep.calls;
        executed += sweep.calls;
        for (const auto& m : sweep.mismatches)
            o.check(false, std::string(dev) + " " + m);
        o.check(p.state() == DeviceState::ON, std::string(dev) + " not ON");
    }
    o.check(commands.size() == 22, std::to_string(commands.size()) + " TypesEcho commands described");
    client::DeviceProxy plc("acc/plc/1", db);
    plc.command_inout("WriteOutputs", std::vector<std::int32_t>{4, 9});
    o.check(plc.command_inout("ReadInputs").get<std::vector<std::int32_t>>().size() == 3, "SimPLC inputs");

    for (const char* id : {"SimPLC/acc", "TypesEcho/acc"})
        st.command_inout("DevStop", std::string(id));
    o.check(eventually([&] { return st.command_inout("DevGetRunningServers").get<std::vector<std::string>>().empty(); },
                       10s),
            "servers did not stop");
    starter.child.stop();
    dbp.child.stop();
    const double s = seconds_since(t0);
    o.check(s < kFiveProcessRuntimeS, "took " + fixed(s) + " s");
    o.note(std::to_string(devices) + " devices exported, " + std::to_string(executed) + " commands executed (" +
           std::to_string(echo_calls) + " echo), " + fixed(s) + " s");
}

// ---------------------------------------------------------------- 3

void reconnection(Outcome& o)
{
    const auto t0 = Steady::now();
    test::InProcessDb db;
    test::TempDir dir;
    auto dbc = db.client();
    dbc->add_server({"TypesEcho/rc", "localhost", 0, {{"TypesEcho", {"acc/echo/rc"}}}});
    const std::vector<std::string> env{"TNG_FAULT_INJECTION=1"};
    auto srv = std::make_unique<test::ServerProcess>(test::bin("TypesEcho"), "rc", db.endpoint(), dir,
                                                     std::vector<std::string>{}, env);
    const auto old_port = srv->port;
    client::DeviceProxy p("acc/echo/rc", dbc);
    o.check(p.command_inout("EchoLong", std::int32_t{1}) == TangoValue(std::int32_t{1}), "first call");

    srv->child.signal(SIGKILL);
    srv->child.wait_for(5s);
    srv = std::make_unique<test::ServerProcess>(test::bin("TypesEcho"), "rc", db.endpoint(), dir,
                                                std::vector<std::string>{}, env);
    o.check(srv->port != old_port, "restarted on the same port");
    try {
        o.check(p.command_inout("EchoLong", std::int32_t{2}) == TangoValue(std::int32_t{2}), "call after restart");
    } catch (const DevFailed& e) {
        o.check(false, "call after restart failed: " + e.reason());
    }

    client::DeviceProxy admin("dserver/typesecho/rc", dbc);
    auto count = [&] {
        return admin.command_inout("DevExecCount", std::vector<std::string>{"acc/echo/rc", "EchoLong"})
            .get<std::uint32_t>();
    };
    const auto before = count();
    admin.command_inout("FaultInject", LongStringArray{{1}, {"drop_reply_after_execute"}});
    std::string lost_reason;
    try {
        p.command_inout("EchoLong", std::int32_t{3});
    } catch (const DevFailed& e) {
        lost_reason = e.reason();
    }
    o.check(lost_reason == reason::DeviceUnreachable, "dropped reply reported as '" + lost_reason + "'");
    const auto after_fault = count() - before;
    o.check(after_fault == 1, "command executed " + std::to_string(after_fault) + " times for one request");
    o.check(p.command_inout("EchoLong", std::int32_t{4}) == TangoValue(std::int32_t{4}), "call after dropped reply");
    o.check(count() - before == 2, "execution count after the next call");
    srv->child.stop();
    const double s = seconds_since(t0);
    o.check(s < kReconnectRuntimeS, "took " + fixed(s) + " s");
    o.note("port " + std::to_string(old_port) + " -> " + std::to_string(srv->port) + ", executions per dropped reply " +
           std::to_string(after_fault) + ", " + fixed(s) + " s");
}

// ---------------------------------------------------------------- 4

void polling(Outcome& o)
{
    auto props = std::make_shared<server::MemoryPropertyStore>();
    auto cls = test::make_tracer_class();
    server::DeviceServer srv("Tracer/poll", props);
    srv.register_class(cls);
    const auto dev = DeviceName::parse("acc/poll/1");
    srv.add_device(*cls, dev.str());
    srv.add_admin_device();
    srv.listen("127.0.0.1", 0);
    const auto base = "127.0.0.1:" + std::to_string(srv.port()) + "/";
    client::DeviceProxy admin(base + "dserver/tracer/poll");
    admin.command_inout("AddObjPolling",
                        LongStringArray{{static_cast<std::int32_t>(kPollPeriod.count())}, {dev.str(), "command", "Counter"}});
    std::this_thread::sleep_for(2 * kPollPeriod); // first sample in

    std::atomic<bool> go{false}, done{false};
    std::atomic<long> reads{0}, not_cache{0}, errors{0};
    std::atomic<std::int32_t> max_seen{0};
    std::vector<std::thread> clients;
    for (int i = 0; i < kPollClients; ++i)
        clients.emplace_back([&] {
            client::DeviceProxy p(base + dev.str());
            p.ping();
            while (!go)
                std::this_thread::yield();
            while (!done) {
                try {
                    auto r = p.command_inout_reply("Counter");
                    ++reads;
                    not_cache += r.source != DataSource::Cache;
                    auto v = r.value.get<std::int32_t>();
                    for (auto m = max_seen.load(); v > m && !max_seen.compare_exchange_weak(m, v);)
                        ;
                } catch (const DevFailed&) {
                    ++errors;
                }
            }
        });
    const auto exec_before = srv.execution_count(dev, "Counter");
    go = true;
    std::this_thread::sleep_for(kPollWindow);
    const auto executions = srv.execution_count(dev, "Counter") - exec_before;
    done = true;
    for (auto& t : clients)
        t.join();
    o.check(executions <= kMaxPolledExecutions, std::to_string(executions) + " handler executions in 3 s");
    o.check(not_cache == 0, std::to_string(not_cache.load()) + " reads not from the cache");
    o.check(errors == 0, std::to_string(errors.load()) + " failed reads");
    o.check(reads > kPollClients, "only " + std::to_string(reads.load()) + " reads");
    // the handler's own counter agrees with the framework's count
    o.check(static_cast<std::uint64_t>(max_seen.load()) <= srv.execution_count(dev, "Counter"),
            "counter value beyond the execution count");

    client::DeviceProxy p(base + dev.str());
    admin.command_inout("StopPolling");
    const auto suspended = Steady::now();
    std::string why;
    while (Steady::now() - suspended < 10 * kPollPeriod) {
        try {
            p.command_inout("Counter");
        } catch (const DevFailed& e) {
            why = e.reason();
            break;
        }
        std::this_thread::sleep_for(2ms);
    }
    const auto stale_after = std::chrono::duration_cast<std::chrono::milliseconds>(Steady::now() - suspended);
    o.check(why == reason::DataNotUpdated, "after suspension got '" + why + "'");
    o.check(stale_after <= 3 * kPollPeriod + kStaleSlack, "DataNotUpdated after " + std::to_string(stale_after.count()) + " ms");
    o.note(std::to_string(reads.load()) + " reads by " + std::to_string(kPollClients) + " clients, " +
           std::to_string(executions) + " executions, DataNotUpdated after " + std::to_string(stale_after.count()) +
           " ms");
}

// ---------------------------------------------------------------- 5

void sequencing(Outcome& o)
{
    test::TempDir dir;
    test::InProcessDb db;
    auto dbc = db.client();
    register_starter(*dbc, dir.path().string());
    const std::vector<std::string> level1{"TypesEcho/l1a", "TypesEcho/l1b"};
    const std::vector<std::string> level2{"SimPLC/l2a", "TypesEcho/l2b"};
    for (const auto& id : level1)
        dbc->add_server({id, kHost, 1, {{"TypesEcho", {"acc/" + to_lower(id.substr(id.find('/') + 1)) + "/1"}}}});
    dbc->add_server({"SimPLC/l2a", kHost, 2, {{"SimPLC", {"acc/l2a/1"}}}});
    dbc->add_server({"TypesEcho/l2b", kHost, 2, {{"TypesEcho", {"acc/l2b/1"}}}});
    test::ServerProcess starter(test::bin("Starter"), kHost, db.endpoint(), dir);

    astor::FleetOptions opts;
    opts.server_timeout = 15s;
    opts.poll = 20ms;
    astor::Fleet fleet(dbc, opts);
    auto admin_of = [](const std::string& id) { return db::admin_device_name(id); };

    int start_ok = 0, stop_ok = 0;
    double worst_gap_ms = 1e18;
    for (int run = 0; run < kSequencingRuns; ++run) {
        const auto run_start = SystemClock::instance().now_ms();
        auto up = fleet.start_all();
        o.check(up.ok(), "start_all run " + std::to_string(run) + " had failures");
        // the database's export stamps are the witness, not astor's own report
        std::int64_t max1 = 0, min2 = std::numeric_limits<std::int64_t>::max();
        bool fresh = true;
        for (const auto& id : level1) {
            auto r = dbc->import_device(admin_of(id));
            fresh &= r.exported && r.export_time_ms >= run_start;
            max1 = std::max(max1, r.export_time_ms);
        }
        for (const auto& id : level2) {
            auto r = dbc->import_device(admin_of(id));
            fresh &= r.exported && r.export_time_ms >= run_start;
            min2 = std::min(min2, r.export_time_ms);
        }
        o.check(fresh, "run " + std::to_string(run) + ": a server did not export afresh");
        if (fresh && max1 <= min2)
            ++start_ok;
        worst_gap_ms = std::min(worst_gap_ms, static_cast<double>(min2 - max1));

        // watch the unexports from outside while stop_all runs
        std::map<std::string, std::int64_t> gone;
        std::atomic<bool> watching{true};
        std::thread watcher([&] {
            auto watch_db = db.client();
            while (watching) {
                for (const auto& id : level1)
                    if (!gone.count(id) && !watch_db->import_device(admin_of(id)).exported)
                        gone[id] = SystemClock::instance().now_ms();
                for (const auto& id : level2)
                    if (!gone.count(id) && !watch_db->import_device(admin_of(id)).exported)
                        gone[id] = SystemClock::instance().now_ms();
                std::this_thread::sleep_for(1ms);
            }
        });
        auto down = fleet.stop_all();
        std::this_thread::sleep_for(20ms);
        watching = false;
        watcher.join();
        o.check(down.ok(), "stop_all run " + std::to_string(run) + " had failures");
        bool reverse = gone.size() == 4;
        for (const auto& a : level2)
            for (const auto& b : level1)
                reverse &= gone.count(a) && gone.count(b) && gone[a] <= gone[b];
        // and astor's report: every level-2 stop confirmed before any level-1 stop issued
        std::int64_t last2 = 0, first1 = std::numeric_limits<std::int64_t>::max();
        for (const auto& r : down.results)
            (r.level == 2 ? last2 = std::max(last2, r.confirmed_ms) : first1 = std::min(first1, r.issued_ms));
        reverse &= last2 <= first1;
        if (reverse)
            ++stop_ok;
    }
    o.check(start_ok == kSequencingRuns, std::to_string(start_ok) + " of " + std::to_string(kSequencingRuns) +
                                             " start_all runs ordered");
    o.check(stop_ok == kSequencingRuns, std::to_string(stop_ok) + " of " + std::to_string(kSequencingRuns) +
                                            " stop_all runs reversed");
    starter.child.stop();
    o.note(std::to_string(start_ok) + "/" + std::to_string(kSequencingRuns) + " ordered starts, " +
           std::to_string(stop_ok) + "/" + std::to_string(kSequencingRuns) + " reversed stops, smallest level gap " +
           fixed(worst_gap_ms, 0) + " ms");
}

// ---------------------------------------------------------------- 6

std::map<std::string, std::string> tree(const fs::path& dir)
{
    std::map<std::string, std::string> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file())
            out[e.path().filename().string()] = test::read_text(e.path());
    return out;
}

void codegen(Outcome& o)
{
    test::TempDir dir;
    test::InProcessDb db;
    auto dbc = db.client();
    const fs::path skeleton_bin = TNG_SKELETON_DIR;
    int runs = 0;
    for (auto [sub, file] : {std::pair{"typesecho", "typesecho.json"}, std::pair{"simplc", "simplc.json"}}) {
        const fs::path shipped = fs::path(TNG_SOURCE_DIR) / "devices" / sub;
        auto def = pogo::load_definition((shipped / file).string());

        // the build compiled exactly what a fresh generate produces
        const auto fresh = dir.path() / ("fresh_" + std::string(sub));
        pogo::generate(def, fresh);
        o.check(tree(fresh) == tree(skeleton_bin.parent_path() / def.class_name),
                def.class_name + ": built skeleton differs from generator output");
        o.check(fs::exists(skeleton_bin / def.class_name), def.class_name + ": no built skeleton");

        const auto dev = "gen/" + to_lower(def.class_name) + "/1";
        dbc->add_server({def.class_name + "/gen", "localhost", 0, {{def.class_name, {dev}}}});
        try {
            test::ServerProcess srv((skeleton_bin / def.class_name).string(), "gen", db.endpoint(), dir);
            client::DeviceProxy p(dev, dbc);
            for (const auto& pr : test::describe_conformance(p, def))
                o.check(false, def.class_name + " skeleton: " + pr);
            ++runs;
        } catch (const DevFailed& e) {
            o.check(false, def.class_name + " skeleton did not run: " + e.reason());
        }

        // regenerate: byte-exact on the shipped tree and on a fresh one
        const auto copy = dir.path() / ("copy_" + std::string(sub));
        fs::copy(shipped, copy);
        const auto before = tree(copy);
        pogo::regenerate(def, copy);
        o.check(tree(copy) == before, def.class_name + ": regenerate changed the shipped sources");
        const auto fresh_before = tree(fresh);
        pogo::regenerate(def, fresh);
        o.check(tree(fresh) == fresh_before, def.class_name + ": regenerate of a fresh skeleton changed it");
    }

    std::mt19937_64 rng(0x9e3779b9);
    test::PreservationResult total;
    for (int i = 0; i < kPreservationTrials; ++i) {
        auto trial_dir = dir.path() / ("trial" + std::to_string(i));
        auto r = test::preservation_trial(rng, i, trial_dir);
        total.edited += r.edited;
        total.kept += r.kept;
        total.orphaned += r.orphaned;
        total.lost += r.lost;
    }
    o.check(total.lost == 0, std::to_string(total.lost) + " edited regions lost");
    o.check(total.kept + total.orphaned == total.edited, "region accounting does not add up");
    o.note(std::to_string(runs) + " skeletons run, " + std::to_string(kPreservationTrials) + " trials: " +
           std::to_string(total.edited) + " edits, " + std::to_string(total.kept) + " kept, " +
           std::to_string(total.orphaned) + " quarantined, " + std::to_string(total.lost) + " lost");
}

// ---------------------------------------------------------------- 7

void gateway_differential(Outcome& o)
{
    test::InProcessDb db;
    test::TempDir dir;
    auto dbc = db.client();
    dbc->add_server({"TypesEcho/gw", "localhost", 0, {{"TypesEcho", {"acc/echo/gw"}}}});
    test::ServerProcess echo(test::bin("TypesEcho"), "gw", db.endpoint(), dir);

    const auto port_file = dir.file("gateway.port");
    proc::SpawnOptions opts;
    opts.log_file = dir.file("gateway.log");
    proc::Child gw(test::bin("gateway"),
                   {"--listen", "127.0.0.1:0", "--db", db.endpoint().str(), "--port-file", port_file}, opts);
    const auto port = test::wait_port_file(port_file, gw);
    o.check(port != 0, "gateway did not start");
    if (port == 0)
        return;
    httplib::Client http("127.0.0.1", port);
    http.set_read_timeout(10, 0);
    client::DeviceProxy direct("acc/echo/gw", dbc);
    std::vector<CommandInfo> echoes;
    for (const auto& c : direct.command_list_query())
        if (c.name.rfind("Echo", 0) == 0)
            echoes.push_back(c);

    testing::ValueGen gen(0xd1ff);
    int mismatches = 0;
    for (int i = 0; i < kGatewayCalls; ++i) {
        const auto& c = echoes[gen.size(echoes.size() - 1)];
        auto v = gen.value(c.in_type);
        auto r = http.Post("/api/v1/devices/acc/echo/gw/commands/" + c.name, jsonmap::to_json(v).dump(),
                           "application/json");
        bool same = false;
        if (r && r->status == 200) {
            try {
                same = jsonmap::value_from_json(nlohmann::json::parse(r->body)) == direct.command_inout(c.name, v);
            } catch (const std::exception&) {
            }
        }
        mismatches += !same;
    }
    o.check(mismatches == 0, std::to_string(mismatches) + " of " + std::to_string(kGatewayCalls) + " calls differ");
    gw.stop();
    echo.child.stop();

    int broken = 0, checked = 0;
    for (auto tag : kAllTypeTags)
        for (int i = 0; i < kBijectionPerTag; ++i) {
            auto v = gen.value(tag, i % 50 == 0 ? 500 : 12);
            auto j = jsonmap::to_json(v);
            auto back = jsonmap::value_from_json(nlohmann::json::parse(j.dump()));
            broken += !(back == v) || jsonmap::to_json(back) != j;
            ++checked;
        }
    o.check(broken == 0, std::to_string(broken) + " JSON round trips broken");
    o.note(std::to_string(kGatewayCalls) + " HTTP calls, " + std::to_string(mismatches) + " mismatches; " +
           std::to_string(checked) + " JSON round trips over 20 tags");
}

// ---------------------------------------------------------------- 8

void throughput(Outcome& o)
{
    test::InProcessDb db;
    test::TempDir dir;
    auto dbc = db.client();
    dbc->add_server({"TypesEcho/perf", "localhost", 0, {{"TypesEcho", {"acc/echo/perf"}}}});
    test::ServerProcess echo(test::bin("TypesEcho"), "perf", db.endpoint(), dir);
    client::DeviceProxy p("acc/echo/perf", dbc);
    for (int i = 0; i < 200; ++i)
        p.command_inout("EchoLong", std::int32_t{i});
    constexpr int n = 5000;
    std::vector<double> lat;
    lat.reserve(n);
    int wrong = 0;
    const auto t0 = Steady::now();
    for (int i = 0; i < n; ++i) {
        const auto s = Steady::now();
        wrong += !(p.command_inout("EchoLong", std::int32_t{i}) == TangoValue(std::int32_t{i}));
        lat.push_back(std::chrono::duration<double, std::milli>(Steady::now() - s).count());
    }
    const double rate = n / seconds_since(t0);
    std::nth_element(lat.begin(), lat.begin() + n / 2, lat.end());
    const double median = lat[n / 2];
    o.check(wrong == 0, std::to_string(wrong) + " wrong replies");
    o.check(rate >= kMinRoundTripsPerS, fixed(rate, 0) + " round trips/s");
    o.check(median < kMaxMedianMs, "median " + fixed(median, 3) + " ms");
    echo.child.stop();
    o.note(fixed(rate, 0) + " round trips/s, median " + fixed(median, 3) + " ms");
}

struct Criterion {
    int number;
    const char* title;
    void (*run)(Outcome&);
};

const Criterion kCriteria[] = {
    {1, "type-system conformance", types},
    {2, "five-process integration", five_processes},
    {3, "reconnection and at-most-once", reconnection},
    {4, "polling cache", polling},
    {5, "level sequencing", sequencing},
    {6, "code generation", codegen},
    {7, "gateway differential", gateway_differential},
    {8, "throughput", throughput},
};

} // namespace

int main(int argc, char** argv)
{
    ::setenv("TNG_LOG", "warn", 0);
    std::signal(SIGPIPE, SIG_IGN);
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i)
        wanted.insert(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& c : kCriteria) {
        if (!wanted.empty() && !wanted.count(c.number))
            continue;
        Outcome o;
        const auto t0 = Steady::now();
        try {
            c.run(o);
        } catch (const DevFailed& e) {
            o.check(false, "aborted: " + e.outer_reason() + ": " + e.errors().back().description);
        } catch (const std::exception& e) {
            o.check(false, std::string("aborted: ") + e.what());
        }
        const bool pass = o.problems.empty();
        failed += !pass;
        std::cout << "criterion " << c.number << " (" << c.title << "): " << (pass ? "PASS" : "FAIL") << " ["
                  << fixed(seconds_since(t0), 1) << " s]";
        for (const auto& f : o.facts)
            std::cout << " " << f;
        std::cout << "\n";
        for (const auto& p : o.problems)
            std::cout << "    " << p << "\n";
        std::cout.flush();
    }
    return failed == 0 ? 0 : 1;
}
