#pragma once

#include <array>

#include "rydfibre/atomic.hpp"
#include "rydfibre/geometry.hpp"

namespace rydfibre {

struct Tensor3 {
    std::array<double, 27> v{};
    double& operator()(int i, int j, int k) { return v[9 * i + 3 * j + k]; }
    double operator()(int i, int j, int k) const { return v[9 * i + 3 * j + k]; }
};

struct Tensor4 {
    std::array<double, 81> v{};
    double& operator()(int i, int j, int k, int l) { return v[27 * i + 9 * j + 3 * k + l]; }
    double operator()(int i, int j, int k, int l) const { return v[27 * i + 9 * j + 3 * k + l]; }
};

/// Mixed derivatives of the static scalar Green function g(r_A, r_B)
/// (g = 1/(4 pi |r_A - r_B|) in vacuum), lengths in nm:
///   d11(i,j)     = dA_i dB_j g
///   d12(i,j,k)   = dA_i dB_j dB_k g
///   d21(i,j,k)   = dA_i dA_j dB_k g
///   d22(i,j,k,l) = dA_i dA_j dB_k dB_l g
/// The dyadic propagator is T = -d11. `order` records the highest total
/// derivative order filled in (2, 3 or 4).
struct GreenDerivatives {
    int order = 2;
    Mat3 d11 = Mat3::Zero();
    Tensor3 d12{};
    Tensor3 d21{};
    Tensor4 d22{};
    /// Largest imaginary part discarded from a mode expansion (cylinder only).
    double imag_residue = 0.0;

    GreenDerivatives& operator+=(const GreenDerivatives& o);
};

GreenDerivatives vacuum_green(const Vec3& ra, const Vec3& rb, int order);

/// Image-charge reflected part for a dielectric filling x < a.
GreenDerivatives halfspace_green(const Vec3& ra, const Vec3& rb, double a, double epsilon, int order);

/// Scattered part for a dielectric cylinder of radius a around the z axis.
GreenDerivatives cylinder_green(const Vec3& ra, const Vec3& rb, double a, double epsilon,
                                const CylQuadParams& params, int order);

/// Reflected part for any medium (zero in vacuum).
GreenDerivatives reflected_green(const PairGeometry& g, const Medium& m, const CylQuadParams& p,
                                 int order);

}  // namespace rydfibre
