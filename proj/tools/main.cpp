#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "rydfibre/error.hpp"
#include "rydfibre/scan.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPartial = 3;

}  // namespace

int main(int argc, char** argv) {
    using namespace rydfibre;

    CLI::App app{"Rydberg pair interactions near a dielectric fibre"};
    app.footer(columns_help());

    std::string scenario, config_path, out_dir, defects, mode;
    int threads = 0;
    double epsilon = 0.0;
    bool no_plots = false;
    std::vector<std::string> scenarios(std::begin(scenario_names), std::end(scenario_names));
    app.add_option("scenario", scenario, "Scenario to run")
        ->required()
        ->check(CLI::IsMember(scenarios));
    app.add_option("-c,--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
    app.add_option("-o,--out-dir", out_dir, "Directory for CSV/JSON/SVG output");
    app.add_option("-j,--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--defects", defects, "Quantum-defect table")->check(CLI::ExistingFile);
    app.add_option("--mode", mode, "Solver mode")->check(CLI::IsMember({"pt2", "diag", "both"}));
    app.add_option("--epsilon", epsilon, "Static permittivity of the medium");
    app.add_flag("--no-plots", no_plots, "Skip SVG output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    ScanConfig cfg;
    try {
        if (!config_path.empty()) cfg = ScanConfig::load(config_path);
        if (!cfg.scenario.empty() && cfg.scenario != scenario)
            std::cerr << "note: config scenario '" << cfg.scenario << "' overridden by '" << scenario
                      << "'\n";
        cfg.scenario = scenario;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (threads > 0) cfg.threads = threads;
        if (!defects.empty()) cfg.defects_path = defects;
        if (!mode.empty()) cfg.mode = mode;
        if (epsilon > 0.0) cfg.medium.epsilon = epsilon;
        if (no_plots) cfg.plots = false;
        cfg.validate();
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        const auto results = run(cfg);
        for (const auto& p : emit(results, cfg)) std::cout << p.string() << '\n';
        const auto bad = results.failures();
        if (bad > 0) {
            std::cerr << bad << " of " << results.records.size() << " points failed\n";
            for (const auto& r : results.records)
                if (!r.ok()) std::cerr << "  [" << r.index << "] " << r.error << '\n';
            return kExitPartial;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
