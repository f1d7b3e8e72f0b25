#include <cmath>
#include <functional>
#include <type_traits>

#include <gtest/gtest.h>

#include "rydfibre/error.hpp"
#include "rydfibre/green.hpp"
#include "rydfibre/propagators.hpp"
#include "rydfibre/units.hpp"

using namespace rydfibre;

namespace {

using GreenFn = std::function<GreenDerivatives(const Vec3&, const Vec3&)>;

// fourth-order central difference of f along e_k
template <class F>
auto central(F f, double h) {
    using T = std::decay_t<decltype(f(h))>;
    T r = (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12.0 * h);
    return r;
}

double max_abs(const Tensor3& t) {
    double m = 0.0;
    for (double x : t.v) m = std::max(m, std::abs(x));
    return m;
}

double max_abs(const Tensor4& t) {
    double m = 0.0;
    for (double x : t.v) m = std::max(m, std::abs(x));
    return m;
}

// Checks d12, d21 and d22 against finite differences of lower orders.
void check_derivative_chain(const GreenFn& green, const Vec3& ra, const Vec3& rb, double h,
                            double tol) {
    const GreenDerivatives g = green(ra, rb);
    ASSERT_GE(g.order, 4);
    for (int k = 0; k < 3; ++k) {
        const Vec3 e = Vec3::Unit(k);
        const Mat3 db = central([&](double s) { return Mat3(green(ra, rb + s * e).d11); }, h);
        const Mat3 da = central([&](double s) { return Mat3(green(ra + s * e, rb).d11); }, h);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                EXPECT_NEAR(g.d12(i, j, k), db(i, j), tol * max_abs(g.d12)) << i << j << k;
                EXPECT_NEAR(g.d21(i, k, j), da(i, j), tol * max_abs(g.d21)) << i << k << j;
            }
        GreenDerivatives shifted[4];
        const double steps[4] = {2 * h, h, -h, -2 * h};
        for (int s = 0; s < 4; ++s) shifted[s] = green(ra + steps[s] * e, rb);
        for (int i = 0; i < 3; ++i)
            for (int m = 0; m < 3; ++m)
                for (int l = 0; l < 3; ++l) {
                    const double d = (-shifted[0].d12(i, m, l) + 8.0 * shifted[1].d12(i, m, l) -
                                      8.0 * shifted[2].d12(i, m, l) + shifted[3].d12(i, m, l)) /
                                     (12.0 * h);
                    EXPECT_NEAR(g.d22(i, k, m, l), d, tol * max_abs(g.d22)) << i << k << m << l;
                }
    }
}

Mat3 t0_closed_form(const Vec3& ra, const Vec3& rb) {
    const Vec3 d = rb - ra;
    const double r = d.norm();
    const Vec3 u = d / r;
    return (3.0 * u * u.transpose() - Mat3::Identity()) / (4.0 * units::pi * r * r * r);
}

}  // namespace

TEST(Vacuum, ClosedFormDyadic) {
    const Vec3 ra(250.0, 0.0, 0.0), rb(-40.0, 120.0, 800.0);
    const GreenDerivatives g = vacuum_green(ra, rb, 2);
    EXPECT_LT((-g.d11 - t0_closed_form(ra, rb)).norm(), 1e-14 * t0_closed_form(ra, rb).norm());
    const PairGeometry pg = PairGeometry::lateral(200.0, 250.0, 700.0);
    const Mat3 t = t0(pg);
    EXPECT_NEAR(t(2, 2), 2.0 / (4.0 * units::pi * std::pow(700.0, 3)), 1e-20);
    EXPECT_NEAR(t(0, 0), -1.0 / (4.0 * units::pi * std::pow(700.0, 3)), 1e-20);
}

TEST(Vacuum, TranslationInvarianceAndTrace) {
    const Vec3 ra(10.0, -3.0, 4.0), rb(60.0, 20.0, -15.0), shift(1e3, -2e2, 5e2);
    const Mat3 a = vacuum_green(ra, rb, 2).d11;
    const Mat3 b = vacuum_green(ra + shift, rb + shift, 2).d11;
    EXPECT_LT((a - b).norm(), 1e-12 * a.norm());
    EXPECT_NEAR(a.trace(), 0.0, 1e-14 * a.norm());
    EXPECT_LT((a - a.transpose()).norm(), 1e-15 * a.norm());
}

TEST(Vacuum, HigherDerivativesMatchFiniteDifferences) {
    check_derivative_chain([](const Vec3& a, const Vec3& b) { return vacuum_green(a, b, 4); },
                           Vec3(250.0, 0.0, 0.0), Vec3(180.0, 90.0, 300.0), 1e-1, 1e-7);
}

TEST(HalfSpace, ZzMatchesPlanarImageFormula) {
    const double a = 200.0, eps = 3.9;
    const Medium m{MediumKind::half_space, eps};
    for (double x : {50.0, 150.0})
        for (double dz : {10.0, 100.0, 500.0, 2000.0}) {
            const PairGeometry g = PairGeometry::lateral(a, a + x, dz);
            const double ref = (eps - 1.0) / (eps + 1.0) * (4.0 * x * x - 2.0 * dz * dz) /
                               (4.0 * units::pi * std::pow(4.0 * x * x + dz * dz, 2.5));
            EXPECT_NEAR(t1_halfspace(g, m)(2, 2), ref, 1e-12 * std::abs(ref)) << x << ' ' << dz;
        }
}

TEST(HalfSpace, HigherDerivativesMatchFiniteDifferences) {
    check_derivative_chain(
        [](const Vec3& a, const Vec3& b) { return halfspace_green(a, b, 200.0, 3.9, 4); },
        Vec3(260.0, 10.0, 0.0), Vec3(300.0, -30.0, 150.0), 1e-1, 1e-7);
}

TEST(HalfSpace, ReciprocityAndVanishingContrast) {
    const Vec3 ra(260.0, 10.0, 0.0), rb(300.0, -30.0, 150.0);
    const Mat3 ab = halfspace_green(ra, rb, 200.0, 3.9, 2).d11;
    const Mat3 ba = halfspace_green(rb, ra, 200.0, 3.9, 2).d11;
    EXPECT_LT((ab - ba.transpose()).norm(), 1e-14 * ab.norm());
    EXPECT_EQ(halfspace_green(ra, rb, 200.0, 1.0, 2).d11.norm(), 0.0);
}

TEST(Cylinder, LateralZeroPatternAndReciprocity) {
    const Medium m{MediumKind::cylinder, 3.9};
    for (double dz : {50.0, 400.0, 1500.0}) {
        const PairGeometry g = PairGeometry::lateral(200.0, 250.0, dz);
        const Mat3 t = t1_cylinder(g, m);
        const double s = t.norm();
        EXPECT_NEAR(t(0, 1), 0.0, 1e-9 * s);
        EXPECT_NEAR(t(1, 0), 0.0, 1e-9 * s);
        EXPECT_NEAR(t(1, 2), 0.0, 1e-9 * s);
        EXPECT_NEAR(t(2, 1), 0.0, 1e-9 * s);
        EXPECT_NEAR(t(0, 2), -t(2, 0), 1e-9 * s);
        EXPECT_GT(std::abs(t(0, 2)), 1e-6 * s);
    }
    const Vec3 ra(250.0, 0.0, 0.0), rb(-100.0, 230.0, 300.0);
    const CylQuadParams q;
    const Mat3 ab = cylinder_green(ra, rb, 200.0, 3.9, q, 2).d11;
    const Mat3 ba = cylinder_green(rb, ra, 200.0, 3.9, q, 2).d11;
    EXPECT_LT((ab - ba.transpose()).norm(), 1e-7 * ab.norm());
}

TEST(Cylinder, ImaginaryResidueIsNegligible) {
    const PropagatorTensor p =
        propagator(PairGeometry::lateral(200.0, 250.0, 600.0), Medium{MediumKind::cylinder, 3.9});
    EXPECT_LT(p.imag_residue, 1e-10);
}

TEST(Cylinder, VanishesWithoutContrast) {
    const PairGeometry g = PairGeometry::lateral(200.0, 250.0, 300.0);
    const Mat3 t = t1_cylinder(g, Medium{MediumKind::cylinder, 1.0 + 1e-9});
    EXPECT_LT(t.norm(), 1e-8 * t0(g).norm());
    EXPECT_THROW(t1_cylinder(g, Medium{MediumKind::cylinder, 1.0}), Error);
}

TEST(Cylinder, PlanarLimitForLargeRadius) {
    const double a = 10000.0, x = 50.0, eps = 3.9;
    CylQuadParams q;
    q.m_max = 6000;
    const PairGeometry g = PairGeometry::lateral(a, a + x, 80.0);
    const Mat3 cyl = t1_cylinder(g, Medium{MediumKind::cylinder, eps}, q);
    const Mat3 plane = t1_halfspace(g, Medium{MediumKind::half_space, eps});
    EXPECT_LT((cyl - plane).norm(), 0.01 * plane.norm()) << cyl << "\n" << plane;
}

TEST(Cylinder, HigherDerivativesMatchFiniteDifferences) {
    const CylQuadParams q{400, 1e-11, 40.0, 4000};
    check_derivative_chain(
        [&](const Vec3& a, const Vec3& b) { return cylinder_green(a, b, 200.0, 3.9, q, 4); },
        Vec3(260.0, 0.0, 0.0), Vec3(240.0, 60.0, 180.0), 0.5, 1e-5);
}

TEST(Cylinder, TooFewModesIsAQuadratureError) {
    CylQuadParams q;
    q.m_max = 4;
    EXPECT_THROW(t1_cylinder(PairGeometry::lateral(200.0, 205.0, 20.0), Medium{MediumKind::cylinder, 3.9}, q),
                 QuadratureError);
}

TEST(Propagator, GradientBlocksAreGreenDerivatives) {
    for (const Medium m : {Medium{MediumKind::vacuum, 1.0}, Medium{MediumKind::half_space, 3.9},
                           Medium{MediumKind::cylinder, 3.9}}) {
        PairGeometry g;
        g.a = 200.0;
        g.r_a = 260.0;
        g.r_b = 240.0;
        g.dphi = 0.3;
        g.dz = 350.0;
        CylQuadParams q;
        q.m_max = 400;
        const GreenDerivatives free = vacuum_green(g.pos_a(), g.pos_b(), 3);
        const GreenDerivatives refl = reflected_green(g, m, q, 3);
        for (const auto part : {GradPart::free, GradPart::reflected}) {
            const GreenDerivatives& src = part == GradPart::free ? free : refl;
            const Tensor3 ga = grad_t(g, m, GradWhich::A, part, q);
            const Tensor3 gb = grad_t(g, m, GradWhich::B, part, q);
            const double s = std::max(max_abs(src.d12), 1e-30);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) {
                        EXPECT_NEAR(gb(i, j, k), -src.d12(i, j, k), 1e-9 * s);
                        EXPECT_NEAR(ga(i, j, k), -src.d21(i, k, j), 1e-9 * s);
                    }
        }
    }
}

TEST(Propagator, AnisotropyCoefficients) {
    Mat3 t;
    t << 3.0, 0.0, 1.0, 0.0, 1.0, 0.0, -1.0, 0.0, 5.0;
    const AnisotropyCoeffs c = anisotropy_coeffs(t);
    EXPECT_DOUBLE_EQ(c.delta_t, 1.0);
    EXPECT_DOUBLE_EQ(c.t_m, 3.0);
}

TEST(Geometry, ValidationRejectsBadPlacements) {
    const Medium cyl{MediumKind::cylinder, 3.9};
    EXPECT_THROW(PairGeometry::lateral(200.0, 150.0, 500.0).validate(cyl), GeometryError);
    EXPECT_THROW(PairGeometry::lateral(200.0, 250.0, 0.0).validate(cyl), GeometryError);
    EXPECT_NO_THROW(PairGeometry::lateral(200.0, 250.0, 500.0).validate(cyl));
    EXPECT_NO_THROW(PairGeometry::lateral(200.0, 150.0, 500.0).validate(Medium{}));
    EXPECT_THROW((Medium{MediumKind::cylinder, 0.5}.validate()), Error);
}
