// pogo: device-class skeleton generator.
//
//   pogo generate <def.json> -o <dir>
//   pogo regenerate <def.json> -d <dir>
//   pogo check <def.json>

#include "tng/pogo/generator.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace tng;

int main(int argc, char** argv)
{
    CLI::App app{"Device-class skeleton generator"};
    app.require_subcommand(1);

    std::string def_file;
    std::string out_dir;
    auto* gen = app.add_subcommand("generate", "Write a fresh skeleton; refuses to overwrite protected code");
    gen->add_option("definition", def_file, "Class definition (JSON)")->required();
    gen->add_option("-o,--out", out_dir, "Output directory")->required();

    auto* regen = app.add_subcommand("regenerate", "Rewrite a skeleton, keeping protected regions");
    regen->add_option("definition", def_file, "Class definition (JSON)")->required();
    regen->add_option("-d,--dir", out_dir, "Existing skeleton directory")->required();

    auto* check = app.add_subcommand("check", "Validate a definition only");
    check->add_option("definition", def_file, "Class definition (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        auto def = pogo::load_definition(def_file);
        if (check->parsed()) {
            std::cout << def.class_name << ": " << def.commands.size() << " commands, " << def.attributes.size()
                      << " attributes, " << def.device_properties.size() << " properties\n";
            return 0;
        }
        auto report = gen->parsed() ? pogo::generate(def, out_dir) : pogo::regenerate(def, out_dir);
        for (const auto& f : report.written)
            std::cout << "wrote " << out_dir << "/" << f << "\n";
        for (const auto& o : report.orphans)
            std::cout << "orphaned region " << o.id << " from " << o.file << " saved to " << out_dir << "/"
                      << pogo::kOrphanFile << "\n";
        return 0;
    } catch (const DevFailed& e) {
        std::cerr << "pogo: " << e.reason() << ": " << e.errors().front().description << "\n";
        return 1;
    }
}
