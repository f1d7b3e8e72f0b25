#include "rydfibre/green.hpp"

#include <cmath>

#include "rydfibre/error.hpp"
#include "rydfibre/units.hpp"

namespace rydfibre {
namespace {

double delta(int i, int j) { return i == j ? 1.0 : 0.0; }

// Derivatives of f(D) = 1/(4 pi |D|) with respect to D.
struct CoulombDerivs {
    Vec3 d;
    double r, inv3, inv5, inv7, inv9;

    explicit CoulombDerivs(const Vec3& dd) : d(dd), r(dd.norm()) {
        const double ir = 1.0 / r;
        const double ir2 = ir * ir;
        const double c = 1.0 / (4.0 * units::pi);
        inv3 = c * ir * ir2;
        inv5 = inv3 * ir2;
        inv7 = inv5 * ir2;
        inv9 = inv7 * ir2;
    }
    double f2(int i, int j) const { return 3.0 * d[i] * d[j] * inv5 - delta(i, j) * inv3; }
    double f3(int i, int j, int k) const {
        return -15.0 * d[i] * d[j] * d[k] * inv7 +
               3.0 * (d[i] * delta(j, k) + d[j] * delta(i, k) + d[k] * delta(i, j)) * inv5;
    }
    double f4(int i, int j, int k, int l) const {
        const double dd = d[i] * d[j] * delta(k, l) + d[i] * d[k] * delta(j, l) +
                          d[i] * d[l] * delta(j, k) + d[j] * d[k] * delta(i, l) +
                          d[j] * d[l] * delta(i, k) + d[k] * d[l] * delta(i, j);
        const double ddd = delta(i, j) * delta(k, l) + delta(i, k) * delta(j, l) +
                           delta(i, l) * delta(j, k);
        return 105.0 * d[i] * d[j] * d[k] * d[l] * inv9 - 15.0 * dd * inv7 + 3.0 * ddd * inv5;
    }
};

// g(rA, rB) = scale * f(rA - M rB - shift) with M diagonal; every B derivative
// along j brings a factor -M_jj.
GreenDerivatives point_source(const Vec3& dvec, const Vec3& mdiag, double scale, int order) {
    const CoulombDerivs f(dvec);
    GreenDerivatives g;
    g.order = order;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g.d11(i, j) = scale * -mdiag[j] * f.f2(i, j);
    if (order < 3) return g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                g.d12(i, j, k) = scale * mdiag[j] * mdiag[k] * f.f3(i, j, k);
                g.d21(i, j, k) = scale * -mdiag[k] * f.f3(i, j, k);
            }
    if (order < 4) return g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    g.d22(i, j, k, l) = scale * mdiag[k] * mdiag[l] * f.f4(i, j, k, l);
    return g;
}

}  // namespace

GreenDerivatives& GreenDerivatives::operator+=(const GreenDerivatives& o) {
    d11 += o.d11;
    for (std::size_t n = 0; n < d12.v.size(); ++n) {
        d12.v[n] += o.d12.v[n];
        d21.v[n] += o.d21.v[n];
    }
    for (std::size_t n = 0; n < d22.v.size(); ++n) d22.v[n] += o.d22.v[n];
    imag_residue = std::max(imag_residue, o.imag_residue);
    order = std::min(order, o.order);
    return *this;
}

GreenDerivatives vacuum_green(const Vec3& ra, const Vec3& rb, int order) {
    const Vec3 d = ra - rb;
    if (!(d.norm() > 0.0)) throw GeometryError("coincident atoms (r_AB = 0)");
    return point_source(d, Vec3(1.0, 1.0, 1.0), 1.0, order);
}

GreenDerivatives halfspace_green(const Vec3& ra, const Vec3& rb, double a, double epsilon,
                                 int order) {
    if (!(ra.x() > a) || !(rb.x() > a)) throw GeometryError("atom inside the dielectric half-space");
    const double beta = (epsilon - 1.0) / (epsilon + 1.0);
    const Vec3 image(2.0 * a - rb.x(), rb.y(), rb.z());
    return point_source(ra - image, Vec3(-1.0, 1.0, 1.0), -beta, order);
}

GreenDerivatives reflected_green(const PairGeometry& g, const Medium& m, const CylQuadParams& p,
                                 int order) {
    switch (m.kind) {
        case MediumKind::vacuum: {
            GreenDerivatives z;
            z.order = order;
            return z;
        }
        case MediumKind::half_space: return halfspace_green(g.pos_a(), g.pos_b(), g.a, m.epsilon, order);
        case MediumKind::cylinder:
            return cylinder_green(g.pos_a(), g.pos_b(), g.a, m.epsilon, p, order);
    }
    throw GeometryError("unknown medium");
}

}  // namespace rydfibre
