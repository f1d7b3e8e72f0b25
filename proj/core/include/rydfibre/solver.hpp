#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rydfibre/hamiltonian.hpp"

namespace rydfibre {

struct PairContribution {
    std::size_t index = 0;
    PairState state;
    double u_ghz = 0.0;
    std::string channel;  // channel name or "quadrupole"
};

/// Second-order shift of the initial pair, decomposed by photon path and by
/// coupling channel. All energies in GHz.
struct PotentialBreakdown {
    double u_total = 0.0;   // second-order sum, = u0 + u_vacfib + u_fibfib
    double u0 = 0.0;
    double u_vacfib = 0.0;
    double u_fibfib = 0.0;
    /// First-order diagonal <00|V|00> (only permanent quadrupoles contribute).
    double u_first = 0.0;
    std::map<std::string, double> channels;  // four dd channels + "quadrupole"
    std::vector<PairContribution> top;       // largest |U_kl| first
    /// Eigenvalues of the second-order effective Hamiltonian on the initial
    /// manifold (one entry for a non-degenerate start).
    std::vector<double> manifold_shifts;
    double manifold_spread = 0.0;  // (max - min)/max|shift|
    double min_abs_delta_ghz = 0.0;

    double u_with_first() const { return u_total + u_first; }
};

struct Pt2Options {
    double quasi_resonance_floor_ghz = 0.5;
    std::size_t top_k = 10;
    CylQuadParams quadrature{};
};

PotentialBreakdown pt2(const AtomModel& atom, const PairBasis& basis, const PairGeometry& geometry,
                       const Medium& medium, const ChannelFilter& filter, const Pt2Options& opts = {});

/// Same as pt2() with precomputed free and reflected Green derivatives.
PotentialBreakdown pt2(const AtomModel& atom, const PairBasis& basis, const GreenDerivatives& g0,
                       const GreenDerivatives& g1, const QuantizationAxis& axis,
                       const ChannelFilter& filter, const Pt2Options& opts = {});

struct TrackResult {
    double shift_ghz = 0.0;                // overlap-weighted mean over tracked levels
    std::vector<double> member_shifts;     // one per manifold member, ascending
    std::vector<double> overlaps;          // summed manifold weight of each tracked level
    double max_overlap = 0.0;
};

/// Dense eigendecomposition; tracks the eigenvectors with the largest summed
/// weight on states [0, manifold_size). Throws TrackingError below 0.5.
TrackResult diagonalize_track(const Eigen::MatrixXcd& h, std::size_t manifold_size);

struct C6Fit {
    double c6 = 0.0;      // GHz um^6, U = -C6/r^6
    double r_vdw = 0.0;   // um
    double residual = 0.0;  // rms relative deviation of U r^6 inside the window
    std::size_t window_begin = 0;
    std::size_t window_size = 0;
};

struct FitOptions {
    double slope_tolerance = 0.2;
    double asymptote_tolerance = 0.05;
};

/// samples: (r in um, U in GHz), strictly increasing r, at least 4 points.
C6Fit fit_c6(const std::vector<std::pair<double, double>>& samples, const FitOptions& opts = {});

struct ChannelReport {
    PotentialBreakdown breakdown;
    double vacuum_allowed = 0.0;   // pi-pi + sigma-sigma-opposite
    double fibre_enabled = 0.0;    // pi-sigma + sigma-sigma-same
    double vacuum_allowed_ratio = 0.0;  // relative to u0
    double fibre_enabled_ratio = 0.0;
};

ChannelReport channel_contributions(const AtomModel& atom, const PairBasis& basis,
                                    const PairGeometry& geometry, const Medium& medium,
                                    const Pt2Options& opts = {});

enum class SolverMode { pt2, diag };

struct QuadReport {
    double u_with = 0.0;
    double u_without = 0.0;
    double u_quad = 0.0;
};

/// U(with quadrupole couplings) - U(dipole-dipole only) on the same basis
/// and in the same solver mode.
QuadReport quad_contribution(const AtomModel& atom, const PairBasis& basis,
                             const PairGeometry& geometry, const Medium& medium, SolverMode mode,
                             const Pt2Options& opts = {}, const AssemblyOptions& aopts = {});

}  // namespace rydfibre
