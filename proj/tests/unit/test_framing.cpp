#include <doctest.h>

#include "memory_stream.hpp"
#include "tng/core/reasons.hpp"
#include "tng/wire/framing.hpp"
#include "value_gen.hpp"

using namespace tng;
using namespace tng::wire;

TEST_CASE("frame layout")
{
    Bytes body{1, 2, 3, 4, 5};
    auto f = write_frame(body);
    CHECK(f == Bytes{5, 0, 0, 0, 1, 2, 3, 4, 5});
    CHECK(write_frame(Bytes{}) == Bytes{0, 0, 0, 0});
}

TEST_CASE("reassembly under random chunk splits")
{
    testing::ValueGen gen(17);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Bytes> bodies;
        Bytes stream;
        auto frames = 1 + gen.size(6);
        for (std::size_t i = 0; i < frames; ++i) {
            Bytes b(gen.size(300));
            for (auto& x : b)
                x = static_cast<std::uint8_t>(gen.rng()());
            auto f = write_frame(b);
            stream.insert(stream.end(), f.begin(), f.end());
            bodies.push_back(std::move(b));
        }
        testing::ChunkedStream s(stream, static_cast<std::uint64_t>(trial), 1 + gen.size(40));
        for (const auto& expected : bodies) {
            auto got = read_frame(s);
            REQUIRE(got.has_value());
            CHECK(*got == expected);
        }
        CHECK_FALSE(read_frame(s).has_value());
    }
}

TEST_CASE("mid-frame end is an error, between-frame end is clean")
{
    auto f = write_frame(Bytes{9, 9, 9});
    for (std::size_t cut = 1; cut < f.size(); ++cut) {
        testing::ChunkedStream s(Bytes(f.begin(), f.begin() + static_cast<long>(cut)), cut);
        try {
            read_frame(s);
            FAIL("expected CONNECTION_CLOSED at cut " << cut);
        } catch (const DevFailed& e) {
            CHECK(e.reason() == reason::ConnectionClosed);
        }
    }
    testing::ChunkedStream empty(Bytes{}, 1);
    CHECK_FALSE(read_frame(empty).has_value());
}

TEST_CASE("oversized prefix is rejected before allocation")
{
    Bytes prefix{0x01, 0x00, 0x00, 0x01}; // 16 MiB + 1
    testing::ChunkedStream s(prefix, 1);
    try {
        read_frame(s);
        FAIL("expected FRAME_TOO_LARGE");
    } catch (const DevFailed& e) {
        CHECK(e.reason() == reason::FrameTooLarge);
    }
    Bytes exact{0x00, 0x00, 0x00, 0x01};
    testing::ChunkedStream s2(exact, 1);
    CHECK_THROWS_AS(read_frame(s2), DevFailed); // at the cap: accepted prefix, then truncated body
    CHECK_THROWS_AS(write_frame(Bytes(kMaxFrameBytes + 1)), DevFailed);
}
