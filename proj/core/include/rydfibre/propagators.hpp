#pragma once

#include <optional>

#include "rydfibre/geometry.hpp"
#include "rydfibre/green.hpp"

namespace rydfibre {

/// Static propagator T = T0 + T1 (nm^-3), T = -dA dB g. Gradient blocks
/// are filled when requested.
struct PropagatorTensor {
    Mat3 t0 = Mat3::Zero();
    Mat3 t1 = Mat3::Zero();
    Mat3 total() const { return t0 + t1; }
    double imag_residue = 0.0;
};

Mat3 t0(const PairGeometry& g);
Mat3 t1_halfspace(const PairGeometry& g, const Medium& medium);
Mat3 t1_cylinder(const PairGeometry& g, const Medium& medium, const CylQuadParams& q = {});
/// Dispatches on medium.kind (zero in vacuum).
Mat3 t1(const PairGeometry& g, const Medium& medium, const CylQuadParams& q = {});

PropagatorTensor propagator(const PairGeometry& g, const Medium& medium,
                            const CylQuadParams& q = {});

enum class GradWhich { A, B };
enum class GradPart { free, reflected };

/// grad(i,j,k) = d/d(r_which)_k T_ij (nm^-4). Analytic for every medium;
/// the cylinder uses ladder-operator derivatives of the mode expansion.
Tensor3 grad_t(const PairGeometry& g, const Medium& medium, GradWhich which, GradPart part,
               const CylQuadParams& q = {});

struct AnisotropyCoeffs {
    double delta_t = 0.0;  // (T1xx - T1yy)/2
    double t_m = 0.0;      // T1zz - (T1xx + T1yy)/2
};

AnisotropyCoeffs anisotropy_coeffs(const Mat3& t1);

/// Full Green-derivative set (free + reflected) up to `order`, in nm units.
GreenDerivatives green_total(const PairGeometry& g, const Medium& medium, const CylQuadParams& q,
                             int order);

}  // namespace rydfibre
