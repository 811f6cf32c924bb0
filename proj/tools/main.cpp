#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gravdec/errors.hpp"
#include "gravdec/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"gravdec: visibility evolution of delocalized quantum systems "
                 "in a static gravitational field"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    bool quiet = false;
    std::string parameter;
    std::vector<double> values;

    auto* run = app.add_subcommand("run", "execute a scenario configuration");
    run->add_option("config", config_path, "scenario config (or run manifest) JSON")
        ->required();
    run->add_option("--out", out_dir, "output directory (default: .)");
    run->add_flag("--quiet", quiet, "suppress chatter and advisories");

    auto* sweep = app.add_subcommand("sweep", "re-run a scenario over one parameter");
    sweep->add_option("config", config_path, "scenario config (or run manifest) JSON")
        ->required();
    sweep->add_option("--param", parameter, "delta_x | T_global | g | epsilon")
        ->required();
    sweep->add_option("--values", values, "comma-separated parameter values")
        ->required()
        ->delimiter(',');
    sweep->add_option("--out", out_dir, "output directory (default: .)");
    sweep->add_flag("--quiet", quiet, "suppress chatter and advisories");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const gravdec::ScenarioConfig config = gravdec::load_config(config_path);
        if (run->parsed()) {
            gravdec::run_scenario(config, out_dir, quiet);
        } else {
            gravdec::sweep_scenario(config, parameter, values, out_dir, quiet);
        }
        return 0;
    } catch (const gravdec::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const gravdec::DegenerateStateError& e) {
        std::cerr << "error: degenerate-state: " << e.what() << "\n";
        return 3;
    } catch (const gravdec::NoDephasingError& e) {
        std::cerr << "error: no-dephasing: " << e.what() << "\n";
        return 3;
    } catch (const gravdec::ProfileDomainError& e) {
        std::cerr << "error: profile-domain: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
