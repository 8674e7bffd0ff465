// Generated by pogo from typesecho.json.
// Only text inside protected regions survives regeneration.
#pragma once

#include "tng/server/device_class.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

// PROTECTED-REGION BEGIN TypesEcho.includes
#include <map>
// PROTECTED-REGION END TypesEcho.includes

// Conformance device: one echo command per data type and one read/write attribute per element type and format.
class TypesEcho : public tng::server::Device {
public:
    using Device::Device;

    static std::shared_ptr<tng::server::DeviceClass> make_class();

    void init_device() override;
    void delete_device() override;

    bool echo_boolean(const bool& argin);
    std::int16_t echo_short(const std::int16_t& argin);
    std::int32_t echo_long(const std::int32_t& argin);
    float echo_float(const float& argin);
    double echo_double(const double& argin);
    std::uint16_t echo_u_short(const std::uint16_t& argin);
    std::uint32_t echo_u_long(const std::uint32_t& argin);
    std::string echo_string(const std::string& argin);
    std::vector<bool> echo_boolean_array(const std::vector<bool>& argin);
    std::vector<std::int16_t> echo_short_array(const std::vector<std::int16_t>& argin);
    std::vector<std::int32_t> echo_long_array(const std::vector<std::int32_t>& argin);
    std::vector<float> echo_float_array(const std::vector<float>& argin);
    std::vector<double> echo_double_array(const std::vector<double>& argin);
    std::vector<std::uint16_t> echo_u_short_array(const std::vector<std::uint16_t>& argin);
    std::vector<std::uint32_t> echo_u_long_array(const std::vector<std::uint32_t>& argin);
    std::vector<std::string> echo_string_array(const std::vector<std::string>& argin);
    tng::LongStringArray echo_long_string_array(const tng::LongStringArray& argin);
    tng::DoubleStringArray echo_double_string_array(const tng::DoubleStringArray& argin);
    tng::DeviceState echo_state(const tng::DeviceState& argin);

    tng::AttributeValue read_short_scalar();
    void write_short_scalar(const tng::AttributeValue& w);
    tng::AttributeValue read_short_spectrum();
    void write_short_spectrum(const tng::AttributeValue& w);
    tng::AttributeValue read_short_image();
    void write_short_image(const tng::AttributeValue& w);
    tng::AttributeValue read_long_scalar();
    void write_long_scalar(const tng::AttributeValue& w);
    tng::AttributeValue read_long_spectrum();
    void write_long_spectrum(const tng::AttributeValue& w);
    tng::AttributeValue read_long_image();
    void write_long_image(const tng::AttributeValue& w);
    tng::AttributeValue read_double_scalar();
    void write_double_scalar(const tng::AttributeValue& w);
    tng::AttributeValue read_double_spectrum();
    void write_double_spectrum(const tng::AttributeValue& w);
    tng::AttributeValue read_double_image();
    void write_double_image(const tng::AttributeValue& w);
    tng::AttributeValue read_string_scalar();
    void write_string_scalar(const tng::AttributeValue& w);
    tng::AttributeValue read_string_spectrum();
    void write_string_spectrum(const tng::AttributeValue& w);
    tng::AttributeValue read_string_image();
    void write_string_image(const tng::AttributeValue& w);

protected:
    // PROTECTED-REGION BEGIN TypesEcho.members
    // Last value written to each attribute; unwritten attributes read back empty.
    std::map<std::string, tng::AttributeValue> stored_;
    // PROTECTED-REGION END TypesEcho.members
};
