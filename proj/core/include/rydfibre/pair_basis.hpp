#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rydfibre/atomic.hpp"

namespace rydfibre {

/// Two-atom product state. delta_ghz = E(initial pair) - E(this pair), the
/// sum of the two single-atom transition frequencies; it is exactly 0 for
/// the initial pair and its degenerate partners.
struct PairState {
    AtomState a;
    AtomState b;
    double delta_ghz = 0.0;

    bool same_levels(const PairState& o) const { return a == o.a && b == o.b; }
};

struct BasisWindow {
    int n_min = 20;
    int n_max = 40;
    int l_max = 4;
    double energy_cutoff_ghz = 500.0;

    /// n_min = n - dn, n_max = n + dn (n_min clamped at 1).
    static BasisWindow around(int n, int dn, int l_max = 4, double cutoff_ghz = 500.0);
    void validate() const;
};

enum class ManifoldMode {
    single,  // only the requested initial pair
    all_mj,  // every (M_J^A, M_J^B) combination of the initial levels
};

struct PairBasis {
    std::vector<PairState> states;  // initial pair at index 0
    std::size_t manifold_size = 1;  // states[0 .. manifold_size) form the initial manifold
    BasisWindow window;
    bool quadrupole = false;

    const PairState& initial() const { return states.front(); }
    std::size_t size() const { return states.size(); }
};

/// Enumerates every product state coupled to a manifold member by one
/// dipole transition on each atom (and, with quadrupoles, by the D-Q, Q-D
/// and Q-Q combinations, a permanent quadrupole counting as a transition).
PairBasis build_basis(const AtomModel& atom, const AtomState& a, const AtomState& b,
                      const BasisWindow& window, bool quad_enabled,
                      ManifoldMode mode = ManifoldMode::single);

/// Basis made of explicit states (first one is the initial pair); detunings
/// recomputed from `atom`. Useful for reduced models and tests.
PairBasis make_basis(const AtomModel& atom, const std::vector<std::pair<AtomState, AtomState>>& pairs,
                     std::size_t manifold_size = 1);

enum class Channel { pi_pi, pi_sigma, sigma_sigma_same, sigma_sigma_opposite };

inline constexpr Channel all_channels[] = {Channel::pi_pi, Channel::pi_sigma,
                                           Channel::sigma_sigma_same,
                                           Channel::sigma_sigma_opposite};

std::string to_string(Channel c);

/// Classifies a single-dipole-step relation per atom by dM (pi for 0,
/// sigma+- for +-1). Throws ChannelError for anything else.
Channel classify_channel(const PairState& from, const PairState& to);
Channel classify_channel(int two_dm_a, int two_dm_b);

/// Debug dump: idx, nA, LA, 2JA, 2MJA, nB, LB, 2JB, 2MJB, delta_GHz.
void write_basis_csv(std::ostream& os, const PairBasis& basis);

}  // namespace rydfibre
