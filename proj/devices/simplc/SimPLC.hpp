// Generated by pogo from simplc.json.
// Only text inside protected regions survives regeneration.
#pragma once

#include "tng/server/device_class.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

// PROTECTED-REGION BEGIN SimPLC.includes
#include "tng/core/reasons.hpp"

#include <map>
// PROTECTED-REGION END SimPLC.includes

// PLC wrapper whose I/O addresses come from device properties, backed by a simulated register bank.
class SimPLC : public tng::server::Device {
public:
    using Device::Device;

    static std::shared_ptr<tng::server::DeviceClass> make_class();

    void init_device() override;
    void delete_device() override;

    std::vector<std::int32_t> read_inputs();
    void write_outputs(const std::vector<std::int32_t>& argin);
    std::int32_t read_register_by_name(const std::string& argin);
    void set_input(const tng::LongStringArray& argin);

    tng::AttributeValue read_register_count();

protected:
    // Device properties, refreshed before every init.
    std::vector<std::string> input_addresses_{};
    std::vector<std::string> output_addresses_{};

    // PROTECTED-REGION BEGIN SimPLC.members
    // Simulated register bank standing in for the PLC. Rebuilt by every init.
    std::map<std::string, std::int32_t> registers_;

    std::int32_t& reg(const std::string& address);
    // PROTECTED-REGION END SimPLC.members
};
