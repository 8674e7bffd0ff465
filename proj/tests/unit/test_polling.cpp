#include <doctest.h>

#include "expect.hpp"
#include "test_devices.hpp"
#include "tng/client/device_proxy.hpp"
#include "tng/polling/poller.hpp"
#include "tng/server/device_server.hpp"

#include <cmath>

using namespace tng;
using namespace tng::polling;

namespace {

CacheSample value_sample(std::int32_t v, std::int64_t t)
{
    return {TangoValue(v), t};
}

std::int32_t long_of(const CacheSample& s)
{
    return std::get<TangoValue>(s.value).get<std::int32_t>();
}

} // namespace

TEST_CASE("25 pushes at depth 10 keep the newest 10, newest first")
{
    PollCache c;
    c.add(PollKind::Command, "ReadInputs", 100);
    for (int i = 0; i < 25; ++i)
        c.push(PollKind::Command, "ReadInputs", value_sample(i, 1000 + 10 * i));
    auto h = c.history(PollKind::Command, "readinputs");
    REQUIRE(h.size() == 10);
    for (int i = 0; i < 10; ++i)
        CHECK(long_of(h[i]) == 24 - i);
}

TEST_CASE("timestamps strictly increase even when the clock does not")
{
    PollCache c;
    c.add(PollKind::Attribute, "x", 10);
    for (int i = 0; i < 12; ++i)
        c.push(PollKind::Attribute, "x", value_sample(i, i < 6 ? 500 : 400));
    auto h = c.history(PollKind::Attribute, "x");
    for (std::size_t i = 1; i < h.size(); ++i)
        CHECK(h[i - 1].acquired_at_ms > h[i].acquired_at_ms);
}

TEST_CASE("cache reads: fresh, stale, unpolled, empty")
{
    PollCache c;
    CHECK_REASON(c.read(PollKind::Command, "A", 0), reason::PollObjNotFound);
    c.add(PollKind::Command, "A", 100);
    CHECK_REASON(c.read(PollKind::Command, "A", 0), reason::PollObjNotFound);
    c.push(PollKind::Command, "A", value_sample(5, 1000));
    CHECK(long_of(c.read(PollKind::Command, "A", 1300)) == 5); // age == 3 * period is still fresh
    CHECK_REASON(c.read(PollKind::Command, "A", 1301), reason::DataNotUpdated);
    CHECK_REASON(c.add(PollKind::Command, "B", 9), reason::BadPeriod);

    c.add(PollKind::Attribute, "attr", 50);
    c.push(PollKind::Attribute, "attr", {AttributeValue::scalar("attr", 1.5), 2000});
    auto s = c.read(PollKind::Attribute, "attr", 2010);
    CHECK(std::get<AttributeValue>(s.value).source() == DataSource::Cache);
    CHECK(std::get<AttributeValue>(s.value).timestamp_ms() == 2000);
}

TEST_CASE("poller runs a fixed-rate schedule without catch-up bursts")
{
    ManualClock clock(10'000);
    PollCache cache;
    int runs = 0;
    DevicePoller p(
        cache, [&](const PollEntry&) { return value_sample(++runs, clock.now_ms()); }, clock, false);
    p.add({PollKind::Command, "C", 100});
    CHECK(p.tick_due(clock.now_ms()) == 1); // immediate first acquisition
    CHECK(p.tick_due(clock.now_ms()) == 0);
    clock.advance(99);
    CHECK(p.tick_due(clock.now_ms()) == 0);
    clock.advance(1);
    CHECK(p.tick_due(clock.now_ms()) == 1);
    clock.advance(1000); // ten periods late: one run, schedule restarts
    CHECK(p.tick_due(clock.now_ms()) == 1);
    CHECK(p.tick_due(clock.now_ms()) == 0);
    clock.advance(100);
    CHECK(p.tick_due(clock.now_ms()) == 1);
    CHECK(runs == 4);
}

TEST_CASE("suspended polling goes stale after 3 periods")
{
    ManualClock clock(0);
    PollCache cache;
    DevicePoller p(cache, [&](const PollEntry&) { return value_sample(1, clock.now_ms()); }, clock, false);
    p.add({PollKind::Command, "C", 100});
    p.tick_due(clock.now_ms());
    p.suspend();
    for (int i = 0; i < 10; ++i) {
        clock.advance(100);
        CHECK(p.tick_due(clock.now_ms()) == 0);
    }
    CHECK_REASON(cache.read(PollKind::Command, "C", clock.now_ms()), reason::DataNotUpdated);
    p.resume();
    CHECK(p.tick_due(clock.now_ms()) == 1);
    CHECK(long_of(cache.read(PollKind::Command, "C", clock.now_ms())) == 1);
}

TEST_CASE("error results are cached and later replaced by success")
{
    ManualClock clock(0);
    PollCache cache;
    bool broken = true;
    DevicePoller p(
        cache,
        [&](const PollEntry&) -> CacheSample {
            if (broken)
                return {DevErrorList{{"HW_DOWN", "no answer", "dev", ErrSeverity::Err}}, clock.now_ms()};
            return value_sample(7, clock.now_ms());
        },
        clock, false);
    p.add({PollKind::Command, "C", 10});
    p.tick_due(clock.now_ms());
    CHECK(cache.read(PollKind::Command, "C", clock.now_ms()).is_error());
    broken = false;
    clock.advance(10);
    p.tick_due(clock.now_ms());
    auto newest = cache.read(PollKind::Command, "C", clock.now_ms());
    CHECK_FALSE(newest.is_error());
    CHECK(long_of(newest) == 7);
}

TEST_CASE("server polling: validation, persistence, cache serving, removal")
{
    auto props = std::make_shared<server::MemoryPropertyStore>();
    auto cls = test::make_tracer_class();
    server::DeviceServer s("Tracer/poll", props);
    s.register_class(cls);
    auto dev = DeviceName::parse("t/poll/1");
    s.add_device(*cls, dev.str());

    CHECK_REASON(s.add_poll(dev, {PollKind::Command, "EchoLong", 100}), reason::PollNotVoid);
    CHECK_REASON(s.add_poll(dev, {PollKind::Command, "Nope", 100}), reason::CommandNotFound);
    CHECK_REASON(s.add_poll(dev, {PollKind::Attribute, "nope", 100}), reason::AttrNotFound);
    CHECK_REASON(s.add_poll(dev, {PollKind::Command, "Counter", 5}), reason::BadPeriod);

    s.add_poll(dev, {PollKind::Command, "counter", 100});
    s.add_poll(dev, {PollKind::Attribute, "good", 50});
    CHECK(props->get(dev.str(), {"polled_cmd"})[0].values == std::vector<std::string>{"Counter", "100"});
    CHECK(props->get(dev.str(), {"polled_attr"})[0].values == std::vector<std::string>{"good", "50"});

    // at least one sample within 300 ms
    auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(300);
    while (s.cache(dev).history(PollKind::Command, "Counter").empty() && std::chrono::steady_clock::now() < deadline)
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    REQUIRE_FALSE(s.cache(dev).history(PollKind::Command, "Counter").empty());

    auto r = s.command_inout(dev, "Counter", {});
    CHECK(r.source == DataSource::Cache);
    auto newest = s.cache(dev).history(PollKind::Command, "Counter").front();
    CHECK(r.value == std::get<TangoValue>(newest.value));
    deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(300);
    while (s.cache(dev).history(PollKind::Attribute, "good").empty() && std::chrono::steady_clock::now() < deadline)
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    CHECK(std::get<AttributeValue>(s.read_attributes(dev, {"good"})[0]).source() == DataSource::Cache);

    auto status = s.poll_status(dev);
    CHECK(status.size() == 2);

    s.remove_poll(dev, PollKind::Command, "COUNTER");
    CHECK(s.command_inout(dev, "Counter", {}).source == DataSource::Hardware);
    CHECK(props->get(dev.str(), {"polled_cmd"})[0].values.empty());
    CHECK_REASON(s.remove_poll(dev, PollKind::Command, "Counter"), reason::PollObjNotFound);
}

TEST_CASE("polling configuration survives a restart through properties")
{
    auto props = std::make_shared<server::MemoryPropertyStore>();
    auto cls = test::make_tracer_class();
    auto dev = DeviceName::parse("t/poll/2");
    {
        server::DeviceServer s("Tracer/poll2", props);
        s.register_class(cls);
        s.add_device(*cls, dev.str());
        s.add_poll(dev, {PollKind::Command, "Counter", 40});
    }
    server::DeviceServer s("Tracer/poll2", props);
    s.register_class(cls);
    s.add_device(*cls, dev.str());
    CHECK_FALSE(s.cache(dev).is_polled(PollKind::Command, "Counter"));
    s.restore_polling();
    CHECK(s.cache(dev).period(PollKind::Command, "Counter") == 40);
}

TEST_CASE("cache shields hardware: executions bounded by ceil(T/p)+1 for any number of readers")
{
    auto cls = test::make_tracer_class();
    server::DeviceServer s("Tracer/shield");
    s.register_class(cls);
    auto dev = DeviceName::parse("t/shield/1");
    s.add_device(*cls, dev.str());
    const int period = 50;
    s.add_poll(dev, {PollKind::Command, "Counter", period}, false);
    while (s.cache(dev).history(PollKind::Command, "Counter").empty())
        std::this_thread::sleep_for(std::chrono::milliseconds(1));

    const auto before = s.execution_count(dev, "Counter");
    const auto t0 = std::chrono::steady_clock::now();
    std::atomic<int> hardware{0};
    std::vector<std::thread> readers;
    for (int i = 0; i < 8; ++i)
        readers.emplace_back([&] {
            while (std::chrono::steady_clock::now() - t0 < std::chrono::milliseconds(600))
                if (s.command_inout(dev, "Counter", {}).source != DataSource::Cache)
                    ++hardware;
        });
    for (auto& t : readers)
        t.join();
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const auto executions = s.execution_count(dev, "Counter") - before;
    CHECK(hardware == 0);
    CHECK(executions <= static_cast<std::uint64_t>(std::ceil(elapsed / period)) + 1);
}

TEST_CASE("admin device drives polling")
{
    auto props = std::make_shared<server::MemoryPropertyStore>();
    auto cls = test::make_tracer_class();
    server::DeviceServer s("Tracer/admin", props);
    s.register_class(cls);
    auto dev = DeviceName::parse("t/admin/1");
    s.add_device(*cls, dev.str());
    s.add_admin_device();
    auto admin = DeviceName::parse("dserver/tracer/admin");
    s.command_inout(admin, "AddObjPolling", LongStringArray{{100}, {dev.str(), "command", "Counter"}});
    CHECK(s.cache(dev).is_polled(PollKind::Command, "Counter"));
    s.command_inout(admin, "StopPolling", {});
    CHECK(s.poller(dev).suspended());
    s.command_inout(admin, "StartPolling", {});
    CHECK_FALSE(s.poller(dev).suspended());
    auto st = s.command_inout(admin, "DevPollStatus", dev.str()).value.get<std::vector<std::string>>();
    REQUIRE(st.size() == 1);
    CHECK(st[0].find("period=100ms") != std::string::npos);
    s.command_inout(admin, "RemObjPolling", std::vector<std::string>{dev.str(), "command", "Counter"});
    CHECK_FALSE(s.cache(dev).is_polled(PollKind::Command, "Counter"));
    CHECK_REASON(s.command_inout(admin, "AddObjPolling", LongStringArray{{100}, {dev.str(), "sideways", "Counter"}}),
                 reason::MalformedArgument);
}
