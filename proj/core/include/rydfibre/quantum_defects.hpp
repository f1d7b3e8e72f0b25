#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>

#include "rydfibre/atom_state.hpp"

namespace rydfibre {

struct DefectSeries {
    double delta0 = 0.0;
    double delta2 = 0.0;
};

/// Rydberg-Ritz quantum defects per (L, 2J) series plus the species Rydberg constant.
class QuantumDefectTable {
public:
    QuantumDefectTable() = default;

    /// Parses `species, L, 2J, delta0, delta2` rows plus the
    /// `rydberg_constant_ghz` and `core_polarizability_au` keys.
    static QuantumDefectTable load(const std::filesystem::path& path);
    static QuantumDefectTable parse(const std::string& text);

    /// The table shipped with the library (path fixed at build time).
    static const QuantumDefectTable& bundled();
    static std::filesystem::path bundled_path();

    /// All defects zero, L = 0..max_l tabulated; used for hydrogen checks.
    static QuantumDefectTable hydrogenic(double rydberg_ghz, int max_l = 4);

    void set_series(int l, int two_j, DefectSeries s);
    void set_rydberg_ghz(double ry) { rydberg_ghz_ = ry; }
    void set_core_polarizability_au(double a) { core_polarizability_au_ = a; }

    double rydberg_ghz() const { return rydberg_ghz_; }
    double core_polarizability_au() const { return core_polarizability_au_; }
    int max_tabulated_l() const { return max_l_; }
    bool has_series(int l, int two_j) const;

    /// delta(n) = delta0 + delta2/(n - delta0)^2. Series with L above the
    /// largest tabulated L are hydrogenic (delta = 0).
    double defect(int n, int l, int two_j) const;

    /// Binding energy -Ry/(n - delta)^2 in GHz.
    double energy(const AtomState& s) const;

    /// FNV-1a hash of the source text, for provenance records.
    std::uint64_t content_hash() const { return hash_; }
    const std::string& source() const { return source_; }

private:
    std::map<std::pair<int, int>, DefectSeries> series_;
    double rydberg_ghz_ = 0.0;
    double core_polarizability_au_ = 0.0;
    int max_l_ = -1;
    std::uint64_t hash_ = 0;
    std::string source_;
};

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace rydfibre
