#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "spinnet/errors.hpp"
#include "spinnet/evolve.hpp"
#include "spinnet/scenario.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw spinnet::InvalidArgumentError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw spinnet::InvalidArgumentError("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-excitation simulator for XY spin networks"};
    app.require_subcommand(1);

    std::optional<double> alpha_override;
    app.add_option("--alpha", alpha_override,
                   "Override the network coupling scale from the scenario");

    std::string scenario_path;
    std::string out_path;
    std::string spectrum_path;
    std::string t1_text;
    std::string t2_text;
    int max_sites = 12;

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Run a scenario and write per-sample observables as CSV");
    simulate->add_option("scenario", scenario_path, "Scenario file")->required();
    simulate->add_option("--out", out_path, "Output CSV path")->required();
    simulate->add_option("--dump-spectrum", spectrum_path,
                         "Also write the network spectrum to this CSV path");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Sweep the two flip times over a grid and write the surface as CSV");
    sweep->add_option("scenario", scenario_path, "Scenario file with t1/t2 events")
        ->required();
    sweep->add_option("--t1", t1_text, "t1 grid as start:stop:count")->required();
    sweep->add_option("--t2", t2_text, "t2 grid as start:stop:count")->required();
    sweep->add_option("--out", out_path, "Output CSV path")->required();

    CLI::App* validate =
        app.add_subcommand("validate", "Parse a scenario and report whether it is valid");
    validate->add_option("scenario", scenario_path, "Scenario file")->required();

    CLI::App* oracle = app.add_subcommand(
        "oracle-check", "Replay a scenario through the brute-force engine and compare");
    oracle->add_option("scenario", scenario_path, "Scenario file")->required();
    oracle->add_option("--max-n", max_sites, "Largest site count to accept")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (alpha_override && !(*alpha_override > 0.0))
            throw spinnet::InvalidArgumentError("--alpha must be positive");

        if (simulate->parsed()) {
            const spinnet::Scenario scenario =
                spinnet::load_scenario_file(scenario_path, alpha_override);
            write_file(out_path, spinnet::execute(scenario));
            if (!spectrum_path.empty()) {
                const spinnet::Spectrum spectrum = spinnet::diagonalize(
                    spinnet::single_excitation_hamiltonian(scenario.network));
                write_file(spectrum_path, spinnet::spectrum_to_csv(spectrum));
            }
        } else if (sweep->parsed()) {
            const spinnet::Scenario scenario =
                spinnet::load_scenario_file(scenario_path, alpha_override);
            const spinnet::GridSpec g1 = spinnet::parse_grid_arg(t1_text);
            const spinnet::GridSpec g2 = spinnet::parse_grid_arg(t2_text);
            write_file(out_path, spinnet::sweep_flip_times(scenario, g1, g2));
        } else if (validate->parsed()) {
            const spinnet::Scenario scenario =
                spinnet::load_scenario_file(scenario_path, alpha_override);
            std::cout << "scenario ok: " << scenario.network.sites() << " sites, "
                      << scenario.events.size() << " events, " << scenario.samples.count
                      << " samples, " << scenario.observables.size() << " observables\n";
        } else if (oracle->parsed()) {
            const spinnet::Scenario scenario =
                spinnet::load_scenario_file(scenario_path, alpha_override);
            const spinnet::OracleCheckResult result =
                spinnet::oracle_check(scenario, max_sites);
            std::cout << result.summary;
            if (!result.ok) return 2;
        }
    } catch (const spinnet::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
