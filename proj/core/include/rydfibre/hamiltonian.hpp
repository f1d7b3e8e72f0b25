#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <unordered_map>

#include <Eigen/Core>

#include "rydfibre/geometry.hpp"
#include "rydfibre/green.hpp"
#include "rydfibre/pair_basis.hpp"

namespace rydfibre {

struct ChannelFilter {
    std::array<bool, 4> channels{true, true, true, true};  // indexed by Channel
    bool dipole_dipole = true;
    bool dipole_quadrupole = false;
    bool quadrupole_quadrupole = false;

    bool allows(Channel c) const { return channels[static_cast<std::size_t>(c)]; }
    bool any_quadrupole() const { return dipole_quadrupole || quadrupole_quadrupole; }
    /// Highest Green-derivative order the filter needs (2, 3 or 4).
    int green_order() const;

    static ChannelFilter dipole_only();
    static ChannelFilter with_quadrupole();
    static ChannelFilter only(Channel c);
};

struct AssemblyOptions {
    std::size_t max_basis = 6000;
    CylQuadParams quadrature{};
};

/// Multipole couplings between pair states for one quantisation axis.
/// Single-atom matrix elements are memoised; not thread-safe, use one
/// instance per worker.
class PairCoupler {
public:
    PairCoupler(const AtomModel& atom, QuantizationAxis axis);

    /// <to| V |from> in GHz for the given Green derivatives and filter.
    /// V = (1/eps0)[dA.d11.dB + dA.d12:QB + QA:d21.dB + QA::d22::QB],
    /// the interaction energy of the two charge distributions.
    std::complex<double> coupling(const PairState& to, const PairState& from,
                                  const GreenDerivatives& g, const ChannelFilter& filter);

    /// True when `to` and `from` differ by one dipole step on each atom.
    static bool dipole_pair_step(const PairState& to, const PairState& from);

private:
    const Vec3c& dipole(const AtomState& from, const AtomState& to);
    const Mat3c& quadrupole(const AtomState& from, const AtomState& to);
    std::uint32_t id(const AtomState& s);

    const AtomModel& atom_;
    QuantizationAxis axis_;
    std::unordered_map<std::uint64_t, std::uint32_t> ids_;
    std::unordered_map<std::uint64_t, Vec3c> dip_;
    std::unordered_map<std::uint64_t, Mat3c> quad_;
};

/// Interaction part only (zero diagonal detuning), GHz. Exactly Hermitian.
Eigen::MatrixXcd interaction_matrix(const AtomModel& atom, const PairBasis& basis,
                                    const GreenDerivatives& g, const QuantizationAxis& axis,
                                    const ChannelFilter& filter, const AssemblyOptions& opts = {});

/// H = diag(-delta_kl) + V, energies relative to the unperturbed initial pair.
Eigen::MatrixXcd assemble(const AtomModel& atom, const PairBasis& basis, const PairGeometry& geometry,
                          const Medium& medium, const ChannelFilter& filter,
                          const AssemblyOptions& opts = {});

}  // namespace rydfibre
