#pragma once

// Brute-force angular matrix elements on the unit sphere: spin-angle
// functions assembled from closed-form l (x) 1/2 coefficients and
// std::sph_legendre, integrated with Gauss-Legendre x uniform-phi rules.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "rydfibre/atomic.hpp"

namespace oracle {

using cplx = std::complex<double>;

struct GaussLegendre {
    std::vector<double> x, w;
    explicit GaussLegendre(int n) : x(n), w(n) {
        for (int i = 0; i < n; ++i) {
            double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (z * p1 - p0) / (z * z - 1.0);
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }
};

inline cplx ylm(int l, int m, double theta, double phi) {
    if (std::abs(m) > l) return 0.0;
    const int am = std::abs(m);
    const cplx y = std::sph_legendre(l, am, theta) * std::exp(cplx(0.0, am * phi));
    if (m >= 0) return y;
    return (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

// <l ml 1/2 ms | j m> for j = l +- 1/2, written out explicitly.
inline double spin_orbit_cg(int l, int two_j, int two_m, int two_ms) {
    const double m = 0.5 * two_m;
    const double den = 2.0 * l + 1.0;
    if (two_j == 2 * l + 1)
        return two_ms > 0 ? std::sqrt((l + m + 0.5) / den) : std::sqrt((l - m + 0.5) / den);
    return two_ms > 0 ? -std::sqrt((l - m + 0.5) / den) : std::sqrt((l + m + 0.5) / den);
}

// Two-component spinor value of |l j m> at (theta, phi).
inline std::array<cplx, 2> spin_angle(const rydfibre::AtomState& s, double theta, double phi) {
    std::array<cplx, 2> out{};
    for (int k = 0; k < 2; ++k) {
        const int two_ms = k == 0 ? 1 : -1;
        const int two_ml = s.two_m - two_ms;
        if (std::abs(two_ml) > 2 * s.l) continue;
        out[k] = spin_orbit_cg(s.l, s.two_j, s.two_m, two_ms) * ylm(s.l, two_ml / 2, theta, phi);
    }
    return out;
}

// <to| f(n) |from> with n the unit vector in the local (axis) frame.
inline cplx sphere_element(const rydfibre::AtomState& to, const rydfibre::AtomState& from,
                           const std::function<double(const Eigen::Vector3d&)>& f, int nodes = 24) {
    GaussLegendre gl(nodes);
    const int nphi = 2 * nodes;
    cplx acc = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double theta = std::acos(gl.x[i]);
        for (int j = 0; j < nphi; ++j) {
            const double phi = 2.0 * M_PI * j / nphi;
            const Eigen::Vector3d n(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                                    std::cos(theta));
            const auto a = spin_angle(to, theta, phi);
            const auto b = spin_angle(from, theta, phi);
            const cplx overlap = std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
            acc += gl.w[i] * (2.0 * M_PI / nphi) * f(n) * overlap;
        }
    }
    return acc;
}

// Columns are the lab components of the local x', y', z' axes.
inline Eigen::Matrix3d frame(const rydfibre::QuantizationAxis& ax) {
    Eigen::Matrix3d e;
    e.col(0) = ax.ex();
    e.col(1) = ax.ey();
    e.col(2) = ax.ez();
    return e;
}

}  // namespace oracle
