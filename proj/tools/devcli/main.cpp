// devcli: one command on one device, values in the gateway's JSON form.
//
//   devcli <device> <command> [json-value]
//   devcli <device> --read <attribute>

#include "tng/client/database.hpp"
#include "tng/json/value_json.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace tng;

int main(int argc, char** argv)
{
    CLI::App app{"Device diagnostic client (database from TNG_HOST unless the name has host:port)"};
    std::string device, command, argument, attribute;
    app.add_option("device", device, "Device name")->required();
    app.add_option("command", command, "Command name");
    app.add_option("argument", argument, "Argument as JSON, {\"type\":..,\"value\":..} or a bare value");
    app.add_option("--read", attribute, "Read an attribute instead");
    CLI11_PARSE(app, argc, argv);

    try {
        const bool direct = device.find(':') != std::string::npos;
        auto proxy = direct ? std::make_unique<client::DeviceProxy>(device)
                            : std::make_unique<client::DeviceProxy>(device, client::Database::from_env());
        if (!attribute.empty()) {
            std::cout << jsonmap::to_json(proxy->read_attribute(attribute)).dump() << "\n";
            return 0;
        }
        if (command.empty()) {
            std::cout << to_string(proxy->state()) << ": " << proxy->status() << "\n";
            return 0;
        }
        TangoValue argin;
        if (!argument.empty()) {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(argument);
            } catch (const nlohmann::json::exception&) {
                j = argument; // a bare word is a string
            }
            argin = j.is_object() && j.contains("type") ? jsonmap::value_from_json(j)
                                                        : jsonmap::value_from_json(j, proxy->command_query(command).in_type);
        }
        std::cout << jsonmap::to_json(proxy->command_inout(command, argin)).dump() << "\n";
        return 0;
    } catch (const DevFailed& e) {
        std::cerr << jsonmap::to_json(e.errors()).dump(2) << "\n";
        return 1;
    }
}
