// srr — scenario-driven batch runner for the stochastic radiation-reaction engine.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "srr/qfactor.hpp"
#include "srr/report.hpp"
#include "srr/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitPartial = 4;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw srr::ConfigError("input", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

srr::Scenario load(const std::string& name_or_path) {
    const auto builtins = srr::list_scenarios();
    if (std::find(builtins.begin(), builtins.end(), name_or_path) != builtins.end())
        return srr::builtin_scenario(name_or_path);
    return srr::parse_scenario(slurp(name_or_path));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"srr — stochastic radiation-reaction simulation engine"};
    app.require_subcommand(1);

    std::string scenario_arg;
    std::uint64_t seed = 0;
    bool seed_given = false;
    unsigned threads = srr::default_workers();
    std::string out_dir;
    bool overwrite = false;
    bool no_svg = false;

    auto* run = app.add_subcommand("run", "run a scenario (built-in name or JSON file)");
    run->add_option("scenario", scenario_arg, "scenario name or path")->required();
    run->add_option("--seed", seed, "override the scenario master seed")
        ->each([&](const std::string&) { seed_given = true; });
    run->add_option("--threads", threads, "worker count (default: SRR_THREADS or 1)");
    run->add_option("--out", out_dir, "output directory (default: scenario output_dir)");
    run->add_flag("--overwrite", overwrite, "replace an existing run in the output directory");
    run->add_flag("--no-svg", no_svg, "skip the SVG convenience plots");

    auto* validate = app.add_subcommand("validate", "validate a scenario without sampling");
    validate->add_option("scenario", scenario_arg, "scenario name or path")->required();

    auto* list = app.add_subcommand("list", "list built-in scenarios");

    std::vector<double> qt_intensities{1e18, 1e19, 1e20, 1e21, 1e22, 1e23};
    std::vector<double> qt_energies{1, 5, 10, 50, 100, 300, 600, 1000, 2000, 4000};
    std::string qt_out = "qtable.csv";
    auto* qtable = app.add_subcommand("q-table", "write a (intensity, energy, chi, q) CSV");
    qtable->add_option("--intensity", qt_intensities, "intensities in W/cm^2");
    qtable->add_option("--energy", qt_energies, "electron energies in MeV");
    qtable->add_option("--out", qt_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& name : srr::list_scenarios()) std::cout << name << "\n";
            return kExitOk;
        }
        if (validate->parsed()) {
            const srr::Scenario s = load(scenario_arg);
            std::cout << "ok: scenario '" << s.name << "' is valid\n";
            return kExitOk;
        }
        if (qtable->parsed()) {
            const auto rows = srr::emit_q_table(qt_intensities, qt_energies);
            srr::CsvWriter csv({"intensity_W_cm2", "energy_MeV", "chi", "q_full", "q_sqed"});
            for (const auto& r : rows)
                csv.add_row({r.intensity_W_cm2, r.energy_MeV, r.chi, r.q_full, r.q_sqed});
            csv.write(qt_out);
            std::cout << "wrote " << rows.size() << " rows to " << qt_out << "\n";
            return kExitOk;
        }
        // run
        const srr::Scenario s = load(scenario_arg);
        srr::RunOptions opt;
        if (seed_given) opt.seed = seed;
        opt.n_workers = threads;
        if (!out_dir.empty()) opt.out_dir = out_dir;
        opt.overwrite = overwrite;
        opt.svg = !no_svg;
        const srr::RunManifest man = srr::run_scenario(s, opt);
        std::cout << "scenario '" << man.name << "' seed " << man.seed << " workers "
                  << man.n_workers << " -> " << man.out_dir << " ("
                  << man.output_checksums.size() << " outputs, "
                  << man.wall_time_s << " s)\n";
        if (!man.complete()) {
            for (const auto& f : man.failed_outputs) std::cerr << "failed: " << f << "\n";
            // nothing produced at all is a numeric failure, not a partial run
            return man.output_checksums.empty() ? kExitNumeric : kExitPartial;
        }
        return kExitOk;
    } catch (const srr::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
