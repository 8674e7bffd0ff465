#include <doctest.h>

#include "golden.hpp"
#include "hex.hpp"
#include "tng/core/reasons.hpp"
#include "tng/wire/codec.hpp"
#include "tng/wire/messages.hpp"
#include "value_gen.hpp"

#include <fstream>
#include <map>
#include <set>

using namespace tng;
using namespace tng::wire;
using tng::testing::from_hex;
using tng::testing::to_hex;

namespace {

std::string decode_reason(const Bytes& b)
{
    try {
        decode_value(b);
    } catch (const DevFailed& e) {
        return e.reason();
    }
    return "";
}

} // namespace

TEST_CASE("encode examples")
{
    CHECK(encode_value(TangoValue()) == Bytes{0x00});
    CHECK(encode_value(TangoValue(std::int32_t{42})) == Bytes{0x03, 0x2A, 0x00, 0x00, 0x00});
}

TEST_CASE("decode examples")
{
    auto d = decode_value(Bytes{0x03, 0x2A, 0x00, 0x00, 0x00});
    CHECK(d.value == TangoValue(std::int32_t{42}));
    CHECK(d.consumed == 5);
    CHECK(decode_reason(Bytes{0xFF}) == reason::BadTag);
    CHECK(decode_reason(Bytes{0x14}) == reason::BadTag);
    CHECK(decode_reason(Bytes{0x08, 0x05, 0x00, 0x00, 0x00, 'a', 'b'}) == reason::Truncated);
    CHECK(decode_reason(Bytes{}) == reason::Truncated);
    CHECK(decode_reason(Bytes{0x08, 0x02, 0x00, 0x00, 0x00, 0xC3, 0x28}) == reason::BadUtf8);
    CHECK(decode_reason(Bytes{0x0B, 0xFF, 0xFF, 0xFF, 0x7F, 0x01}) == reason::LengthOverflow);
    CHECK(decode_reason(Bytes{0x10, 0x03, 0x00, 0x00, 0x00, 0x00}) == reason::LengthOverflow);
    CHECK(decode_reason(Bytes{0x01, 0x02}) == reason::BadValue);
    CHECK(decode_reason(Bytes{0x13, 0x0E}) == reason::BadValue);
}

TEST_CASE("encoded_size agrees with the encoder")
{
    testing::ValueGen gen(99);
    for (int i = 0; i < 2000; ++i) {
        auto v = gen.any_value(40);
        CHECK(encoded_size(v) == encode_value(v).size());
    }
}

TEST_CASE("golden vectors are byte-exact")
{
    std::ifstream in(TNG_TEST_DATA_DIR "/golden_vectors.txt");
    REQUIRE(in.good());
    auto values = testing::golden_values();
    std::set<TypeTag> tags;
    std::string line;
    int checked = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        auto sp = line.find(' ');
        auto name = line.substr(0, sp);
        auto bytes = from_hex(line.substr(sp));
        REQUIRE_MESSAGE(values.count(name), name);
        const auto& v = values.at(name);
        CHECK_MESSAGE(to_hex(encode_value(v)) == to_hex(bytes), name);
        auto d = decode_value(bytes);
        CHECK(d.value == v);
        CHECK(d.consumed == bytes.size());
        tags.insert(v.tag());
        ++checked;
    }
    CHECK(checked >= 20);
    CHECK(tags.size() == kTypeTagCount);
}

TEST_CASE("codec round trip over every tag")
{
    testing::ValueGen gen(2024);
    int n = 0;
    for (auto tag : kAllTypeTags) {
        for (int i = 0; i < 600; ++i) {
            auto v = gen.value(tag, i % 50 == 0 ? 1000 : 20);
            auto bytes = encode_value(v);
            auto d = decode_value(bytes);
            REQUIRE(d.value == v);
            REQUIRE(d.consumed == bytes.size());
            ++n;
        }
    }
    CHECK(n >= 10000);
}

TEST_CASE("decoder is total over random and mutated input")
{
    testing::ValueGen gen(7);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int i = 0; i < 20000; ++i) {
        Bytes b;
        if (i % 2 == 0) {
            b.resize(gen.size(24));
            for (auto& x : b)
                x = static_cast<std::uint8_t>(byte(gen.rng()));
        } else {
            b = encode_value(gen.any_value(6));
            auto flips = 1 + gen.size(3);
            for (std::size_t k = 0; k < flips && !b.empty(); ++k)
                b[gen.size(b.size() - 1)] = static_cast<std::uint8_t>(byte(gen.rng()));
            if (gen.size(3) == 0 && !b.empty())
                b.resize(gen.size(b.size() - 1));
        }
        try {
            auto d = decode_value(b);
            CHECK(d.consumed <= b.size());
        } catch (const DevFailed& e) {
            CHECK(!e.reason().empty());
        }
    }
}

TEST_CASE("encoder rejects values above the frame cap")
{
    TangoValue big(std::vector<double>(kMaxFrameBytes / 8 + 1));
    try {
        encode_value(big);
        FAIL("expected VALUE_TOO_LARGE");
    } catch (const DevFailed& e) {
        CHECK(e.reason() == reason::ValueTooLarge);
    }
}

TEST_CASE("encoder rejects invalid UTF-8")
{
    CHECK_THROWS_AS(encode_value(TangoValue(std::string("\xFF"))), DevFailed);
}

TEST_CASE("envelope and structured payload round trips")
{
    RequestEnvelope req{77, 1, "sr/test/echo1", encode_command_request({"EchoLong", TangoValue(std::int32_t{7})})};
    auto back = decode_request(encode_request(req));
    CHECK(back.request_id == 77);
    CHECK(back.op_code == 1);
    CHECK(back.device == "sr/test/echo1");
    auto cmd = decode_command_request(back.payload);
    CHECK(cmd.command == "EchoLong");
    CHECK(cmd.argument == TangoValue(std::int32_t{7}));

    ReplyEnvelope rep{77, ReplyStatus::Error, encode_errors({DevError{"A", "b", "c", ErrSeverity::Panic}})};
    auto rback = decode_reply(encode_reply(rep));
    CHECK(rback.status == ReplyStatus::Error);
    Reader r(rback.payload);
    auto errs = decode_errors(r);
    REQUIRE(errs.size() == 1);
    CHECK(errs[0] == DevError{"A", "b", "c", ErrSeverity::Panic});

    auto cr = decode_command_reply(encode_command_reply({TangoValue(2.5), DataSource::Cache}));
    CHECK(cr.value == TangoValue(2.5));
    CHECK(cr.source == DataSource::Cache);

    Bytes trailing = encode_command_request({"X", TangoValue()});
    trailing.push_back(0);
    CHECK_THROWS_AS(decode_command_request(trailing), DevFailed);
}

TEST_CASE("attribute structures round trip")
{
    testing::ValueGen gen(3);
    for (auto et : kAllAttrElementTypes) {
        for (auto fmt : {AttrFormat::Scalar, AttrFormat::Spectrum, AttrFormat::Image}) {
            auto v = gen.attribute("attr", et, fmt, 8, 5);
            v.set_timestamp_ms(123456789012);
            v.set_source(DataSource::Cache);
            std::vector<AttrReadResult> results{v, DevErrorList{DevError{"R", "d", "o", ErrSeverity::Err}}};
            Bytes b;
            Writer w(b);
            encode_read_results(w, results);
            Reader r(b);
            auto back = decode_read_results(r);
            CHECK(r.at_end());
            REQUIRE(back.size() == 2);
            CHECK(std::get<AttributeValue>(back[0]) == v);
            CHECK(std::get<DevErrorList>(back[1]).front().reason == "R");
        }
    }
    AttributeConfig cfg{"img", AttrWritable::ReadWrite, AttrElementType::DevString, AttrFormat::Image, 64, 64,
                        "desc", "mm"};
    CommandInfo ci{"Move", TypeTag::DevDouble, TypeTag::DevVoid, "moves", {DeviceState::ON, DeviceState::STANDBY}};
    Bytes b;
    Writer w(b);
    encode_attribute_config(w, cfg);
    encode_command_info(w, ci);
    Reader r(b);
    CHECK(decode_attribute_config(r) == cfg);
    CHECK(decode_command_info(r) == ci);
    CHECK(r.at_end());
}
