#include "rydfibre/propagators.hpp"

#include "rydfibre/error.hpp"

namespace rydfibre {

Mat3 t0(const PairGeometry& g) {
    if (!(g.r_ab() > 0.0)) throw GeometryError("coincident atoms (r_AB = 0)");
    return -vacuum_green(g.pos_a(), g.pos_b(), 2).d11;
}

Mat3 t1_halfspace(const PairGeometry& g, const Medium& medium) {
    Medium m = medium;
    m.kind = MediumKind::half_space;
    g.validate(m);
    return -halfspace_green(g.pos_a(), g.pos_b(), g.a, m.epsilon, 2).d11;
}

Mat3 t1_cylinder(const PairGeometry& g, const Medium& medium, const CylQuadParams& q) {
    Medium m = medium;
    m.kind = MediumKind::cylinder;
    g.validate(m);
    return -cylinder_green(g.pos_a(), g.pos_b(), g.a, m.epsilon, q, 2).d11;
}

Mat3 t1(const PairGeometry& g, const Medium& medium, const CylQuadParams& q) {
    switch (medium.kind) {
        case MediumKind::vacuum: return Mat3::Zero();
        case MediumKind::half_space: return t1_halfspace(g, medium);
        case MediumKind::cylinder: return t1_cylinder(g, medium, q);
    }
    return Mat3::Zero();
}

PropagatorTensor propagator(const PairGeometry& g, const Medium& medium, const CylQuadParams& q) {
    g.validate(medium);
    PropagatorTensor p;
    p.t0 = t0(g);
    if (medium.kind == MediumKind::vacuum) return p;
    const auto r = reflected_green(g, medium, q, 2);
    p.t1 = -r.d11;
    p.imag_residue = r.imag_residue;
    return p;
}

Tensor3 grad_t(const PairGeometry& g, const Medium& medium, GradWhich which, GradPart part,
               const CylQuadParams& q) {
    g.validate(medium);
    GreenDerivatives d;
    if (part == GradPart::free)
        d = vacuum_green(g.pos_a(), g.pos_b(), 3);
    else
        d = reflected_green(g, medium, q, 3);
    Tensor3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                out(i, j, k) = which == GradWhich::B ? -d.d12(i, j, k) : -d.d21(k, i, j);
    return out;
}

AnisotropyCoeffs anisotropy_coeffs(const Mat3& t) {
    return {0.5 * (t(0, 0) - t(1, 1)), t(2, 2) - 0.5 * (t(0, 0) + t(1, 1))};
}

GreenDerivatives green_total(const PairGeometry& g, const Medium& medium, const CylQuadParams& q,
                             int order) {
    g.validate(medium);
    GreenDerivatives d = vacuum_green(g.pos_a(), g.pos_b(), order);
    if (medium.kind != MediumKind::vacuum) d += reflected_green(g, medium, q, order);
    return d;
}

}  // namespace rydfibre
