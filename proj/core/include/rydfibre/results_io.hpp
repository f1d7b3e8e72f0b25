#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace rydfibre {

/// One grid point. Numeric fields are keyed by column name; a failed point
/// keeps status != "ok" and the error text instead of aborting the scan.
struct Record {
    std::size_t index = 0;
    std::string status = "ok";
    std::string error;
    std::string model;  // set for reduced-model outputs
    std::map<std::string, double> values;

    double get(const std::string& key) const;
    bool ok() const { return status == "ok"; }
};

struct Provenance {
    std::string version;
    std::string timestamp;
    std::string defects_path;
    std::uint64_t defects_hash = 0;
};

struct ResultSet {
    std::string scenario;
    std::vector<std::string> columns;  // frozen CSV schema for the scenario
    std::string config_json;           // echo of the effective configuration
    Provenance provenance;
    std::vector<Record> records;

    std::size_t failures() const;
};

/// CSV: index, status, then the scenario columns (%.17g), then error.
/// Missing values are written as empty cells.
void write_csv(std::ostream& os, const ResultSet& rs);
/// Parses a CSV produced by write_csv back into records (columns restored).
ResultSet read_csv(std::istream& is, const std::string& scenario = {});

void write_json(std::ostream& os, const ResultSet& rs);

/// Writes <dir>/<scenario>.csv and .json; returns the paths written.
std::vector<std::filesystem::path> emit_files(const ResultSet& rs, const std::filesystem::path& dir);

std::string format_double(double v);
std::string utc_timestamp();

}  // namespace rydfibre
