#include "rydfibre/atomic.hpp"

#include <cmath>
#include <cstdlib>

#include "rydfibre/angular.hpp"
#include "rydfibre/error.hpp"

namespace rydfibre {

Vec3 QuantizationAxis::ez() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Vec3 QuantizationAxis::ex() const {
    return {std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), -std::sin(theta)};
}

Vec3 QuantizationAxis::ey() const { return {-std::sin(phi), std::cos(phi), 0.0}; }

Vec3c QuantizationAxis::spherical_conj(int q) const {
    const cplx i(0.0, 1.0);
    const double s = std::sqrt(0.5);
    switch (q) {
        case 0: return ez().cast<cplx>();
        case 1: return -s * (ex().cast<cplx>() - i * ey().cast<cplx>());
        case -1: return s * (ex().cast<cplx>() + i * ey().cast<cplx>());
        default: throw InvalidStateError("spherical component out of range");
    }
}

AtomModel::AtomModel(const QuantumDefectTable& table, RadialOptions opts)
    : table_(&table), radial_(std::make_unique<RadialSolver>(table, opts)) {}

double AtomModel::radial_integral(const AtomState& a, const AtomState& b, int power) const {
    a.validate();
    b.validate();
    if (power == 1 && std::abs(a.l - b.l) != 1)
        throw ForbiddenTransitionError("dipole radial integral needs |dL| = 1: " + a.label() +
                                       " / " + b.label());
    if (power == 2 && std::abs(a.l - b.l) != 0 && std::abs(a.l - b.l) != 2)
        throw ForbiddenTransitionError("quadrupole radial integral needs dL in {0, 2}: " +
                                       a.label() + " / " + b.label());
    return radial_->integral(a, b, power);
}

bool AtomModel::dipole_allowed(const AtomState& from, const AtomState& to) {
    return std::abs(from.l - to.l) == 1 && std::abs(from.two_j - to.two_j) <= 2 &&
           std::abs(from.two_m - to.two_m) <= 2;
}

bool AtomModel::quadrupole_allowed(const AtomState& from, const AtomState& to) {
    const int dl = std::abs(from.l - to.l);
    if (dl != 0 && dl != 2) return false;
    if (from.l == 0 && to.l == 0) return false;
    return std::abs(from.two_j - to.two_j) <= 4 && std::abs(from.two_m - to.two_m) <= 4;
}

Vec3c AtomModel::dipole_vector(const AtomState& from, const AtomState& to,
                               const QuantizationAxis& axis) const {
    from.validate();
    to.validate();
    if (!dipole_allowed(from, to))
        throw ForbiddenTransitionError("E1-forbidden: " + from.label() + " -> " + to.label());
    const int q = (to.two_m - from.two_m) / 2;
    const double ang =
        angular::ck_matrix_element(to.l, to.two_j, to.two_m, 1, q, from.l, from.two_j, from.two_m);
    if (ang == 0.0) return Vec3c::Zero();
    const double rad = radial_->integral(from, to, 1);
    return -(rad * ang) * axis.spherical_conj(q);
}

Mat3c AtomModel::quadrupole_tensor(const AtomState& from, const AtomState& to,
                                   const QuantizationAxis& axis) const {
    from.validate();
    to.validate();
    if (from.l == 0 && to.l == 0)
        throw ForbiddenTransitionError("L = 0 -> 0 quadrupole excluded: " + from.label() + " -> " +
                                       to.label());
    if (!quadrupole_allowed(from, to)) return Mat3c::Zero();
    const int q = (to.two_m - from.two_m) / 2;

    // r_i r_j = sum_k sum_q [r(x)r]^k_q sum_{q1+q2=q} <1q1 1q2|kq> (e_q1^*)_i (e_q2^*)_j
    // with [r(x)r]^2_q = sqrt(2/3) r^2 C^2_q and [r(x)r]^0 = -r^2/sqrt(3).
    auto coupling = [&](int k, int qk) {
        Mat3c m = Mat3c::Zero();
        for (int q1 = -1; q1 <= 1; ++q1) {
            const int q2 = qk - q1;
            if (q2 < -1 || q2 > 1) continue;
            const double cg = angular::clebsch_gordan(2, 2 * q1, 2, 2 * q2, 2 * k, 2 * qk);
            if (cg == 0.0) continue;
            m += cg * axis.spherical_conj(q1) * axis.spherical_conj(q2).transpose();
        }
        return m;
    };

    Mat3c xx = Mat3c::Zero();
    const double c2 = angular::ck_matrix_element(to.l, to.two_j, to.two_m, 2, q, from.l,
                                                 from.two_j, from.two_m);
    if (c2 != 0.0) xx += std::sqrt(2.0 / 3.0) * c2 * coupling(2, q);
    if (from.l == to.l && from.two_j == to.two_j && from.two_m == to.two_m)
        xx += (-1.0 / std::sqrt(3.0)) * coupling(0, 0);
    if (xx.isZero(0.0)) return xx;
    const double rad = radial_->integral(from, to, 2);
    return -0.5 * rad * xx;
}

}  // namespace rydfibre
