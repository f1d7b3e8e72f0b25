#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "rydfibre/atom_state.hpp"
#include "rydfibre/quantum_defects.hpp"

namespace rydfibre {

struct RadialOptions {
    /// Step in x = ln(r). All states share the grid x_k = k*h so integrals
    /// between different states need no interpolation.
    double step = 1e-3;
    /// Lower bound on the inner cutoff (a.u.); the cutoff is
    /// max(core_polarizability^(1/3), inner_floor).
    double inner_floor = 1e-3;
};

/// Inward-integrated radial function on the shared logarithmic grid.
/// Stores w(x) with u(r) = r R(r) = r^(1/2) w, normalised so that
/// integral r^2 w^2 dx = 1 and w > 0 at large r.
struct RadialWave {
    int k_begin = 0;  // grid index of w[0]
    double energy_au = 0.0;
    double r_inner = 0.0;
    std::vector<double> w;

    int k_end() const { return k_begin + static_cast<int>(w.size()); }
};

/// Numerov radial solver with a thread-safe memo cache. Pure Coulomb
/// potential; the quantum-defect energy carries the core physics.
class RadialSolver {
public:
    explicit RadialSolver(const QuantumDefectTable& table, RadialOptions opts = {});

    std::shared_ptr<const RadialWave> wave(int n, int l, int two_j) const;

    /// integral R_a r^power R_b r^2 dr in atomic units.
    double integral(const AtomState& a, const AtomState& b, int power) const;

    const RadialOptions& options() const { return opts_; }
    const QuantumDefectTable& table() const { return table_; }

    std::size_t cached_waves() const;

private:
    std::shared_ptr<const RadialWave> solve(int n, int l, int two_j) const;

    const QuantumDefectTable& table_;
    RadialOptions opts_;

    using WaveKey = std::tuple<int, int, int>;
    using IntegralKey = std::tuple<int, int, int, int, int, int, int>;
    mutable std::shared_mutex mutex_;
    mutable std::map<WaveKey, std::shared_ptr<const RadialWave>> waves_;
    mutable std::map<IntegralKey, double> integrals_;
};

/// Overlap integral r^(2+power) w_a w_b dx of two waves on the shared grid.
double radial_overlap(const RadialWave& a, const RadialWave& b, int power, double step);

}  // namespace rydfibre
