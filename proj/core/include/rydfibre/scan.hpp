#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rydfibre/geometry.hpp"
#include "rydfibre/pair_basis.hpp"
#include "rydfibre/results_io.hpp"

namespace rydfibre {

inline constexpr const char* scenario_names[] = {"c6-table", "scan-z", "scan-phi", "scan-axis",
                                                 "forster", "channels", "quad"};

/// Everything a scan needs. Lengths in nm, angles in degrees at this boundary.
struct ScanConfig {
    std::string scenario;

    AtomState initial_a{30, 0, 1, 1};
    AtomState initial_b{30, 0, 1, 1};
    ManifoldMode manifold = ManifoldMode::single;

    Medium medium{MediumKind::cylinder, 3.9};

    std::vector<double> a_nm{200.0};
    std::vector<double> r_a_nm{250.0};
    std::vector<double> r_b_nm{};  // empty: follow r_a
    std::vector<double> dphi_deg{0.0};
    std::vector<double> dz_nm{};
    std::vector<double> theta_deg{0.0};
    std::vector<double> phi_deg{0.0};

    std::string mode = "pt2";  // pt2 | diag | both
    int dn = 10;
    int l_max = 4;
    double energy_cutoff_ghz = 500.0;
    double diag_energy_cutoff_ghz = 500.0;
    bool quadrupole = false;
    double quasi_resonance_floor_ghz = 0.5;
    std::size_t max_basis = 6000;
    CylQuadParams quadrature{};

    std::vector<int> n_values{30, 35, 40, 45};
    double c6_reference_um = 10.0;
    int forster_n_min = 30;
    int forster_n_max = 50;

    std::filesystem::path out_dir = "results";
    bool plots = true;
    int threads = 1;
    std::string defects_path;  // empty: bundled table

    static ScanConfig from_json(const std::string& text);
    static ScanConfig load(const std::filesystem::path& path);
    std::string to_json() const;

    /// Throws ConfigError on missing axes, empty grids or bad values.
    void validate() const;
    bool wants_pt2() const { return mode == "pt2" || mode == "both"; }
    bool wants_diag() const { return mode == "diag" || mode == "both"; }
};

/// Frozen CSV column list of a scenario.
std::vector<std::string> scenario_columns(const std::string& scenario);

/// Help text describing every scenario's columns.
std::string columns_help();

/// Evaluates the scenario at every grid point. Per-point failures become
/// records with status "error"; configuration errors throw before any work.
ResultSet run(const ScanConfig& config);

/// CSV, JSON and (for 1-D scans) SVG under config.out_dir.
std::vector<std::filesystem::path> emit(const ResultSet& results, const ScanConfig& config);

}  // namespace rydfibre
