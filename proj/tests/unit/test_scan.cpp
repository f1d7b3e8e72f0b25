#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "rydfibre/error.hpp"
#include "rydfibre/results_io.hpp"
#include "rydfibre/scan.hpp"

using namespace rydfibre;

namespace {

std::string small_scan_z(int threads) {
    return R"({
        "scenario": "scan-z",
        // comments are accepted
        "initial": {"n": 30, "l": 0, "j": 0.5, "mj": 0.5},
        "medium": {"kind": "cylinder", "epsilon": 3.9},
        "geometry": {"a_nm": 200, "r_a_nm": [250, 150], "dz_nm": {"start": 400, "stop": 1000, "num": 3}},
        "solver": {"mode": "both"},
        "basis": {"dn": 2, "l_max": 2, "energy_cutoff_ghz": 100, "diag_energy_cutoff_ghz": 50},
        "threads": )" + std::to_string(threads) + "}";
}

}  // namespace

TEST(Config, GridForms) {
    const auto c = ScanConfig::from_json(R"({"scenario": "scan-z",
        "geometry": {"dz_nm": {"start": 100, "stop": 500, "step": 100}, "r_a_nm": 260,
                     "theta_deg": [0, 45, 90], "phi_deg": {"start": 0, "stop": 90, "num": 4}}})");
    EXPECT_EQ(c.dz_nm, (std::vector<double>{100, 200, 300, 400, 500}));
    EXPECT_EQ(c.r_a_nm, (std::vector<double>{260}));
    EXPECT_EQ(c.theta_deg, (std::vector<double>{0, 45, 90}));
    EXPECT_EQ(c.phi_deg, (std::vector<double>{0, 30, 60, 90}));
    EXPECT_NO_THROW(c.validate());
}

TEST(Config, InitialStatesAndRoundTrip) {
    auto c = ScanConfig::from_json(R"({"scenario": "channels",
        "initial": {"a": {"n": 35, "l": 1, "j": 1.5, "mj": 1.5}, "manifold": "all_mj"},
        "geometry": {"dz_nm": [800]}, "medium": {"kind": "half-space", "epsilon": 2.1}})");
    EXPECT_EQ(c.initial_a, (AtomState{35, 1, 3, 3}));
    EXPECT_EQ(c.initial_b, c.initial_a);
    EXPECT_EQ(c.manifold, ManifoldMode::all_mj);
    EXPECT_EQ(c.medium.kind, MediumKind::half_space);
    const auto again = ScanConfig::from_json(c.to_json());
    EXPECT_EQ(again.to_json(), c.to_json());
}

TEST(Config, ValidationErrors) {
    auto bad = [](const std::string& text) {
        EXPECT_THROW(ScanConfig::from_json(text).validate(), ConfigError) << text;
    };
    bad(R"({"scenario": "nope", "geometry": {"dz_nm": [100]}})");
    bad(R"({"scenario": "scan-z", "geometry": {"dz_nm": []}})");
    bad(R"({"scenario": "scan-z"})");
    bad(R"({"scenario": "scan-z", "geometry": {"dz_nm": [-5]}})");
    bad(R"({"scenario": "scan-z", "geometry": {"dz_nm": [100]}, "solver": {"mode": "exact"}})");
    bad(R"({"scenario": "scan-z", "geometry": {"dz_nm": [100]}, "medium": {"epsilon": 0.5}})");
    bad(R"({"scenario": "scan-z", "geometry": {"dz_nm": [100]}, "initial": {"n": 30, "l": 0, "j": 1.5, "mj": 0.5}})");
    bad(R"({"scenario": "c6-table", "geometry": {"dz_nm": [100, 200]}})");
    bad(R"({"scenario": "forster", "forster": {"n_min": 40, "n_max": 30}})");
    EXPECT_THROW(ScanConfig::from_json(R"({"scenario": "scan-z", "geometry": {"dz_nm": {"start": 1}}})"), ConfigError);
    EXPECT_THROW(ScanConfig::from_json("{not json"), ConfigError);
}

TEST(Columns, FrozenPerScenario) {
    for (const char* s : scenario_names) EXPECT_FALSE(scenario_columns(s).empty()) << s;
    const auto z = scenario_columns("scan-z");
    for (const char* c : {"dz_um", "t1_zz", "u_pt2_ghz", "ratio_pt2", "u_diag_ghz", "imag_residue"})
        EXPECT_NE(std::find(z.begin(), z.end(), c), z.end()) << c;
    EXPECT_THROW(scenario_columns("bogus"), ConfigError);
    EXPECT_NE(columns_help().find("c6-table"), std::string::npos);
}

TEST(Run, FailingPointsBecomeRecords) {
    const ResultSet rs = run(ScanConfig::from_json(small_scan_z(1)));
    ASSERT_EQ(rs.records.size(), 6u);
    std::size_t failed = 0;
    for (const auto& r : rs.records) {
        if (r.ok()) {
            EXPECT_NEAR(r.get("r_a_nm"), 250.0, 0.0);
            EXPECT_GT(r.get("ratio_pt2"), 0.0);
            EXPECT_LT(r.get("imag_residue"), 1e-10);
        } else {
            ++failed;
            EXPECT_NEAR(r.get("r_a_nm"), 150.0, 0.0);
            EXPECT_FALSE(r.error.empty());
        }
    }
    EXPECT_EQ(failed, 3u);
    EXPECT_EQ(rs.failures(), 3u);
}

TEST(Run, SerialAndParallelAgree) {
    const ResultSet a = run(ScanConfig::from_json(small_scan_z(1)));
    const ResultSet b = run(ScanConfig::from_json(small_scan_z(3)));
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        EXPECT_EQ(a.records[i].index, b.records[i].index);
        EXPECT_EQ(a.records[i].status, b.records[i].status);
        EXPECT_EQ(a.records[i].values, b.records[i].values);
    }
}

TEST(Run, CsvRoundTripIsExact) {
    const ResultSet rs = run(ScanConfig::from_json(small_scan_z(1)));
    std::ostringstream os;
    write_csv(os, rs);
    std::istringstream is(os.str());
    const ResultSet back = read_csv(is, rs.scenario);
    ASSERT_EQ(back.records.size(), rs.records.size());
    EXPECT_EQ(back.columns, rs.columns);
    for (std::size_t i = 0; i < rs.records.size(); ++i) {
        EXPECT_EQ(back.records[i].status, rs.records[i].status);
        EXPECT_EQ(back.records[i].values, rs.records[i].values);
        EXPECT_EQ(back.records[i].error, rs.records[i].error);
    }
    std::ostringstream again;
    write_csv(again, back);
    EXPECT_EQ(again.str(), os.str());
}

TEST(Run, ForsterFlagsTheSignChange) {
    auto c = ScanConfig::from_json(R"({"scenario": "forster", "forster": {"n_min": 30, "n_max": 45}})");
    const ResultSet rs = run(c);
    ASSERT_EQ(rs.records.size(), 16u);
    int flagged = 0;
    for (const auto& r : rs.records)
        if (r.get("delta2_sign_change") != 0.0) {
            ++flagged;
            EXPECT_NEAR(r.get("n"), 38.0, 1.0);
        }
    EXPECT_EQ(flagged, 1);
}

TEST(Run, EmitWritesFiles) {
    auto c = ScanConfig::from_json(R"({"scenario": "forster", "forster": {"n_min": 30, "n_max": 33}})");
    const auto dir = std::filesystem::temp_directory_path() / "rydfibre_emit_test";
    std::filesystem::remove_all(dir);
    c.out_dir = dir;
    const auto files = emit(run(c), c);
    EXPECT_GE(files.size(), 2u);
    for (const auto& f : files) EXPECT_TRUE(std::filesystem::exists(f)) << f;
    std::ifstream json(dir / "forster.json");
    std::stringstream ss;
    ss << json.rdbuf();
    EXPECT_NE(ss.str().find("defects_fnv1a64"), std::string::npos);
    std::filesystem::remove_all(dir);
}
