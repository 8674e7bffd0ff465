#pragma once

#include "tng/core/reasons.hpp"
#include "tng/server/device_class.hpp"

#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

namespace tng::test {

// Instrumented device for framework tests.
class Tracer : public server::Device {
public:
    using Device::Device;

    void init_device() override
    {
        if (properties().has("FailInit") && properties().get_integer("FailInit") != 0)
            throw_dev_failed("TRACER_InitBroken", "told to fail", "Tracer::init_device");
        gain_ = properties().has("Gain") ? properties().get_float("Gain") : 1.0;
        ++inits;
    }

    std::int32_t echo_long(std::int32_t v) { return v; }

    std::int32_t counter() { return ++count_; }

    // Sleeps while flagging itself busy; overlapping entry is recorded.
    void slow(std::int32_t ms)
    {
        if (busy_.exchange(true))
            ++overlaps;
        std::this_thread::sleep_for(std::chrono::milliseconds(ms));
        busy_ = false;
    }

    std::int32_t fail() { throw std::runtime_error("tracer failure"); }
    std::int32_t fail_dev() { throw_dev_failed("TRACER_Broken", "deliberate", ""); }

    double get_gain() { return gain_; }
    void go_fault() { set_state(DeviceState::FAULT); }
    void go_on() { set_state(DeviceState::ON); }
    std::int32_t only_on() { return 1; }

    AttributeValue read_good() { return AttributeValue::scalar("good", good_); }
    void write_good(const AttributeValue& v) { good_ = v.values<double>().front(); }
    AttributeValue read_ro() { return AttributeValue::scalar<std::int32_t>("ro", 42); }
    void write_wo(const AttributeValue& v) { wo_ = v.values<std::int32_t>().front(); }
    AttributeValue read_spec() { return AttributeValue::spectrum("spec", spec_); }
    void write_spec(const AttributeValue& v) { spec_ = v.values<std::int16_t>(); }
    AttributeValue read_broken() { return AttributeValue::scalar<std::int32_t>("broken", 1); }

    std::atomic<int> overlaps{0};
    std::atomic<int> inits{0};

private:
    std::atomic<bool> busy_{false};
    std::int32_t count_ = 0;
    double gain_ = 1.0;
    double good_ = 0;
    std::int32_t wo_ = 0;
    std::vector<std::int16_t> spec_;
};

inline std::shared_ptr<server::DeviceClass> make_tracer_class(std::string name = "Tracer")
{
    using server::PropertySpec;
    using server::PropertyType;
    auto c = server::DeviceClass::make<Tracer>(std::move(name));
    c->command("EchoLong", &Tracer::echo_long)
        .command("Counter", &Tracer::counter)
        .command("Slow", &Tracer::slow)
        .command("Fail", &Tracer::fail)
        .command("FailDev", &Tracer::fail_dev)
        .command("GetGain", &Tracer::get_gain)
        .command("GoFault", &Tracer::go_fault)
        .command("GoOn", &Tracer::go_on)
        .command("OnlyOn", &Tracer::only_on, "allowed in ON only", {DeviceState::ON});
    c->command(CommandInfo{"BadOutput", TypeTag::DevVoid, TypeTag::DevLong, "returns the wrong tag", {}},
               [](server::Device&, const TangoValue&) { return TangoValue(std::string("oops")); });
    c->attribute<Tracer>({"good", AttrWritable::ReadWrite, AttrElementType::DevDouble, AttrFormat::Scalar, 1, 0, "", ""},
                         &Tracer::read_good, &Tracer::write_good);
    c->attribute<Tracer>({"ro", AttrWritable::Read, AttrElementType::DevLong, AttrFormat::Scalar, 1, 0, "", ""},
                         &Tracer::read_ro);
    c->attribute<Tracer>({"wo", AttrWritable::Write, AttrElementType::DevLong, AttrFormat::Scalar, 1, 0, "", ""},
                         nullptr, &Tracer::write_wo);
    c->attribute<Tracer>({"spec", AttrWritable::ReadWrite, AttrElementType::DevShort, AttrFormat::Spectrum, 8, 0, "", ""},
                         &Tracer::read_spec, &Tracer::write_spec);
    // declared double, handler returns long
    c->attribute<Tracer>({"broken", AttrWritable::Read, AttrElementType::DevDouble, AttrFormat::Scalar, 1, 0, "", ""},
                         &Tracer::read_broken);
    c->property(PropertySpec{"Gain", PropertyType::Float, {"1.0"}, "scale"});
    c->property(PropertySpec{"FailInit", PropertyType::Integer, {}, "non-zero makes init throw"});
    return c;
}

} // namespace tng::test
