#pragma once

#include <complex>
#include <memory>

#include <Eigen/Core>

#include "rydfibre/atom_state.hpp"
#include "rydfibre/quantum_defects.hpp"
#include "rydfibre/radial.hpp"

namespace rydfibre {

using cplx = std::complex<double>;
using Vec3c = Eigen::Matrix<cplx, 3, 1>;
using Mat3c = Eigen::Matrix<cplx, 3, 3>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Quantisation direction (polar angle theta, azimuth phi) in the lab frame.
struct QuantizationAxis {
    double theta = 0.0;
    double phi = 0.0;

    Vec3 ez() const;
    Vec3 ex() const;
    Vec3 ey() const;
    /// Conjugated spherical unit vector e_q^* for q in {-1, 0, +1}, so that
    /// r = sum_q r_q e_q^*.
    Vec3c spherical_conj(int q) const;
};

/// Single-atom structure of 87Rb: energies and multipole matrix elements.
class AtomModel {
public:
    explicit AtomModel(const QuantumDefectTable& table = QuantumDefectTable::bundled(),
                       RadialOptions opts = {});

    double energy(const AtomState& s) const { return table_->energy(s); }

    /// integral R_a r^power R_b r^2 dr (a.u.); power 1 for dipoles, 2 for quadrupoles.
    double radial_integral(const AtomState& a, const AtomState& b, int power) const;

    static bool dipole_allowed(const AtomState& from, const AtomState& to);
    /// Even parity, |dL| in {0, 2}, |dJ| <= 2, |dM| <= 2, and not L = 0 -> 0.
    static bool quadrupole_allowed(const AtomState& from, const AtomState& to);

    /// <to| d |from> with d = -r, Cartesian lab components in a.u.
    /// Throws ForbiddenTransitionError outside the E1 selection rules.
    Vec3c dipole_vector(const AtomState& from, const AtomState& to,
                        const QuantizationAxis& axis) const;

    /// <to| Q |from> with Q = -(1/2) r (x) r, Cartesian lab components in a.u.
    /// Parity-odd or angular-momentum-forbidden pairs give the zero tensor;
    /// L = 0 -> 0 throws ForbiddenTransitionError.
    Mat3c quadrupole_tensor(const AtomState& from, const AtomState& to,
                            const QuantizationAxis& axis) const;

    const QuantumDefectTable& table() const { return *table_; }
    const RadialSolver& radial() const { return *radial_; }

private:
    const QuantumDefectTable* table_;
    std::unique_ptr<RadialSolver> radial_;
};

}  // namespace rydfibre
