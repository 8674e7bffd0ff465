// Generated by pogo from simplc.json.
// Only text inside protected regions survives regeneration.
#include "SimPLC.hpp"

using namespace tng;

std::shared_ptr<server::DeviceClass> SimPLC::make_class()
{
    auto cls = server::DeviceClass::make<SimPLC>("SimPLC", "PLC wrapper whose I/O addresses come from device properties, backed by a simulated register bank.");
    cls->command("ReadInputs", &SimPLC::read_inputs, "Input register values, in InputAddresses order", {DeviceState::ON});
    cls->command("WriteOutputs", &SimPLC::write_outputs, "Store one value per OutputAddresses entry, in order", {DeviceState::ON});
    cls->command("ReadRegisterByName", &SimPLC::read_register_by_name, "Value of one input or output register", {DeviceState::ON});
    cls->command("SetInput", &SimPLC::set_input, "Simulation hook: force input registers (names in strings, values in longs)", {DeviceState::ON});
    cls->attribute<SimPLC>({.name = "register_count", .writable = AttrWritable::Read, .element_type = AttrElementType::DevLong, .format = AttrFormat::Scalar, .max_dim_x = 1, .max_dim_y = 0, .description = "Number of materialised registers", .unit = ""},
                        &SimPLC::read_register_count);
    cls->property({"InputAddresses", server::PropertyType::StringList, {}, "Input register names, e.g. DB1.0"});
    cls->property({"OutputAddresses", server::PropertyType::StringList, {}, "Output register names"});
    return cls;
}

void SimPLC::init_device()
{
    input_addresses_ = properties().has("InputAddresses") ? properties().get_string_list("InputAddresses") : std::vector<std::string>{};
    output_addresses_ = properties().has("OutputAddresses") ? properties().get_string_list("OutputAddresses") : std::vector<std::string>{};
    // PROTECTED-REGION BEGIN SimPLC.init
    registers_.clear();
    for (const auto* list : {&input_addresses_, &output_addresses_})
        for (const auto& a : *list)
            registers_.emplace(a, 0);
    set_status("Serving " + std::to_string(input_addresses_.size()) + " inputs and " +
               std::to_string(output_addresses_.size()) + " outputs");
    // PROTECTED-REGION END SimPLC.init
}

void SimPLC::delete_device()
{
    // PROTECTED-REGION BEGIN SimPLC.delete
    registers_.clear();
    // PROTECTED-REGION END SimPLC.delete
}

// Input register values, in InputAddresses order
std::vector<std::int32_t> SimPLC::read_inputs()
{
    std::vector<std::int32_t> argout{};
    // PROTECTED-REGION BEGIN cmd.ReadInputs.body
    argout.reserve(input_addresses_.size());
    for (const auto& a : input_addresses_)
        argout.push_back(reg(a));
    // PROTECTED-REGION END cmd.ReadInputs.body
    return argout;
}

// Store one value per OutputAddresses entry, in order
void SimPLC::write_outputs(const std::vector<std::int32_t>& argin)
{
    // PROTECTED-REGION BEGIN cmd.WriteOutputs.body
    if (argin.size() != output_addresses_.size())
        throw_dev_failed(reason::SimPlcLengthMismatch,
                         "WriteOutputs got " + std::to_string(argin.size()) + " values for " +
                             std::to_string(output_addresses_.size()) + " output addresses",
                         "SimPLC::write_outputs");
    for (std::size_t i = 0; i < argin.size(); ++i)
        reg(output_addresses_[i]) = argin[i];
    // PROTECTED-REGION END cmd.WriteOutputs.body
}

// Value of one input or output register
std::int32_t SimPLC::read_register_by_name(const std::string& argin)
{
    std::int32_t argout{};
    // PROTECTED-REGION BEGIN cmd.ReadRegisterByName.body
    argout = reg(argin);
    // PROTECTED-REGION END cmd.ReadRegisterByName.body
    return argout;
}

// Simulation hook: force input registers (names in strings, values in longs)
void SimPLC::set_input(const tng::LongStringArray& argin)
{
    // PROTECTED-REGION BEGIN cmd.SetInput.body
    if (argin.longs.size() != argin.strings.size())
        throw_dev_failed(reason::SimPlcLengthMismatch, "SetInput needs one value per register name",
                         "SimPLC::set_input");
    for (const auto& a : argin.strings)
        reg(a); // all names are checked before anything is written
    for (std::size_t i = 0; i < argin.strings.size(); ++i)
        reg(argin.strings[i]) = argin.longs[i];
    // PROTECTED-REGION END cmd.SetInput.body
}

AttributeValue SimPLC::read_register_count()
{
    AttributeValue reading = tng::AttributeValue::scalar<std::int32_t>("register_count", {});
    // PROTECTED-REGION BEGIN attr.register_count.read
    reading = AttributeValue::scalar("register_count", static_cast<std::int32_t>(registers_.size()));
    // PROTECTED-REGION END attr.register_count.read
    return reading;
}

// PROTECTED-REGION BEGIN SimPLC.extra
std::int32_t& SimPLC::reg(const std::string& address)
{
    auto it = registers_.find(address);
    if (it == registers_.end())
        throw_dev_failed(reason::SimPlcUnknownRegister, "no register named " + address, "SimPLC");
    return it->second;
}
// PROTECTED-REGION END SimPLC.extra
