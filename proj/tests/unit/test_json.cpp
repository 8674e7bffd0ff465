#include <doctest.h>

#include "tng/core/reasons.hpp"
#include "tng/json/value_json.hpp"
#include "value_gen.hpp"

using namespace tng;
using nlohmann::json;
namespace tj = tng::jsonmap;

TEST_CASE("canonical JSON forms")
{
    CHECK(tj::to_json(TangoValue(std::int32_t{7})) == json::parse(R"({"type":"DevLong","value":7})"));
    CHECK(tj::to_json(TangoValue()) == json::parse(R"({"type":"DevVoid"})"));
    CHECK(tj::to_json(TangoValue(DeviceState::ALARM)) == json::parse(R"({"type":"DevState","value":"ALARM"})"));
    CHECK(tj::to_json(TangoValue(LongStringArray{{1, 2}, {"a"}})) ==
          json::parse(R"({"type":"DevVarLongStringArray","value":{"longs":[1,2],"strings":["a"]}})"));
    CHECK(tj::to_json(TangoValue(DoubleStringArray{{0.5}, {}})) ==
          json::parse(R"({"type":"DevVarDoubleStringArray","value":{"doubles":[0.5],"strings":[]}})"));
    CHECK(tj::to_json(TangoValue(std::vector<bool>{true})) ==
          json::parse(R"({"type":"DevVarBooleanArray","value":[true]})"));
}

TEST_CASE("JSON bijection for every tag (text round trip)")
{
    testing::ValueGen gen(404);
    for (auto tag : kAllTypeTags) {
        for (int i = 0; i < 300; ++i) {
            auto v = gen.value(tag, 12);
            auto text = tj::to_json(v).dump();
            auto back = tj::value_from_json(json::parse(text));
            REQUIRE_MESSAGE(back == v, text);
        }
    }
}

TEST_CASE("bad JSON values are rejected")
{
    auto reason_of = [](const char* text) -> std::string {
        try {
            tj::value_from_json(json::parse(text));
        } catch (const DevFailed& e) {
            return e.reason();
        }
        return "";
    };
    CHECK(reason_of(R"({"type":"DevBanana","value":1})") == reason::BadJson);
    CHECK(reason_of(R"({"type":"DevShort","value":40000})") == reason::BadJson);
    CHECK(reason_of(R"({"type":"DevULong","value":-1})") == reason::BadJson);
    CHECK(reason_of(R"({"type":"DevLong","value":"abc"})") == reason::BadJson);
    CHECK(reason_of(R"({"type":"DevLong","value":1.5})") == reason::BadJson);
    CHECK(reason_of(R"({"type":"DevLong"})") == reason::BadJson);
    CHECK(reason_of(R"({"type":"DevState","value":"SLEEPY"})") == reason::BadJson);
    CHECK(reason_of(R"([1,2])") == reason::BadJson);
    CHECK(reason_of(R"({"type":"DevVarLongStringArray","value":[1]})") == reason::BadJson);
}

TEST_CASE("bare JSON typed by a declared tag")
{
    CHECK(tj::value_from_json(json(7), TypeTag::DevLong) == TangoValue(std::int32_t{7}));
    CHECK(tj::value_from_json(json::parse("[1.5,2]"), TypeTag::DevVarDoubleArray) ==
          TangoValue(std::vector<double>{1.5, 2.0}));
    CHECK_THROWS_AS(tj::value_from_json(json::parse(R"({"type":"DevDouble","value":1})"), TypeTag::DevLong),
                    DevFailed);
}

TEST_CASE("attribute value JSON")
{
    AttributeConfig cfg{"long_image", AttrWritable::ReadWrite, AttrElementType::DevLong, AttrFormat::Image, 64, 64, "", ""};
    auto v = tj::attribute_value_from_json(json::parse(R"({"data":[1,2,3,4,5,6],"dim_x":3,"dim_y":2})"), cfg);
    CHECK(v.dim_x() == 3);
    CHECK(v.dim_y() == 2);
    auto j = tj::to_json(v);
    CHECK(j["source"] == "Hardware");
    CHECK(j["data"].size() == 6);
    AttributeConfig sc{"d", AttrWritable::ReadWrite, AttrElementType::DevDouble, AttrFormat::Scalar, 1, 0, "", ""};
    CHECK(tj::attribute_value_from_json(json(2.5), sc).values<double>() == std::vector<double>{2.5});
    CHECK_THROWS_AS(tj::attribute_value_from_json(json::parse(R"({"data":[1,2,3],"dim_x":2,"dim_y":2})"), cfg),
                    DevFailed);
}
