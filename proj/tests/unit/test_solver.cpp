#include <cmath>

#include <gtest/gtest.h>

#include "rydfibre/error.hpp"
#include "rydfibre/hamiltonian.hpp"
#include "rydfibre/models.hpp"
#include "rydfibre/propagators.hpp"
#include "rydfibre/solver.hpp"
#include "rydfibre/units.hpp"

using namespace rydfibre;

namespace {

const AtomModel& atom() {
    static const AtomModel m;
    return m;
}

const AtomState s30{30, 0, 1, 1};
const Medium fibre{MediumKind::cylinder, 3.9};

// Bundled table with the fine-structure splitting of every L > 0 series removed.
const QuantumDefectTable& no_fine_structure() {
    static const QuantumDefectTable t = [] {
        const auto& src = QuantumDefectTable::bundled();
        QuantumDefectTable out = QuantumDefectTable::hydrogenic(src.rydberg_ghz(), 4);
        out.set_core_polarizability_au(src.core_polarizability_au());
        out.set_series(0, 1, {3.1311804, 0.1784});
        const DefectSeries p{2.6548849, 0.2900}, d{1.3480917, -0.6029}, f{0.0165192, -0.085}, g{0.004, 0.0};
        for (const auto& [l, s] : {std::pair{1, p}, {2, d}, {3, f}, {4, g}}) {
            out.set_series(l, 2 * l - 1, s);
            out.set_series(l, 2 * l + 1, s);
        }
        return out;
    }();
    return t;
}

}  // namespace

TEST(Pt2, MatchesBruteForceSum) {
    const std::vector<std::pair<AtomState, AtomState>> pairs = {
        {s30, s30},
        {{30, 1, 3, 1}, {29, 1, 3, 1}},
        {{30, 1, 1, -1}, {29, 1, 3, 3}},
        {{31, 1, 3, 3}, {29, 1, 1, -1}},
        {{30, 1, 3, 3}, {30, 1, 3, -1}},
        {{29, 1, 3, 1}, {31, 1, 1, 1}},
        {{28, 1, 3, 1}, {32, 1, 3, 1}},
        {{30, 1, 1, 1}, {30, 1, 3, 1}},
    };
    const PairBasis b = make_basis(atom(), pairs);
    const QuantizationAxis axis{0.7, 0.4};
    PairGeometry g;
    g.a = 1.0;
    g.r_a = 100.0;
    g.r_b = 120.0;
    g.dphi = 0.5;
    g.dz = 600.0;
    g.axis = axis;
    const auto res = pt2(atom(), b, g, Medium{}, ChannelFilter::dipole_only());

    const Vec3 d = g.pos_b() - g.pos_a();
    const double r = d.norm() / units::bohr_nm;
    const Vec3 u = d / d.norm();
    double ref = 0.0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
        const auto& [ka, kb] = pairs[k];
        const Vec3c da = atom().dipole_vector(s30, ka, axis);
        const Vec3c db = atom().dipole_vector(s30, kb, axis);
        const cplx v = ((da.transpose() * db)(0) - 3.0 * (da.transpose() * u.cast<cplx>())(0) *
                                                       (db.transpose() * u.cast<cplx>())(0)) /
                       (r * r * r) * units::hartree_ghz;
        const double delta = 2.0 * atom().energy(s30) - atom().energy(ka) - atom().energy(kb);
        ref += std::norm(v) / delta;
    }
    EXPECT_NEAR(res.u_total, ref, 1e-12 * std::abs(ref));
    EXPECT_DOUBLE_EQ(res.u0, res.u_total);
    EXPECT_EQ(res.u_vacfib, 0.0);
    EXPECT_EQ(res.u_fibfib, 0.0);
}

TEST(Pt2, ClosureOfPathAndChannelSplits) {
    const PairBasis b = build_basis(atom(), s30, s30, BasisWindow::around(30, 4, 3, 300.0), false);
    const PairGeometry g = PairGeometry::lateral(200.0, 250.0, 700.0, QuantizationAxis{0.5, 0.9});
    Pt2Options o;
    o.quasi_resonance_floor_ghz = 0.1;
    const auto res = pt2(atom(), b, g, fibre, ChannelFilter::dipole_only(), o);
    const double s = std::abs(res.u_total);
    EXPECT_NEAR(res.u0 + res.u_vacfib + res.u_fibfib, res.u_total, 1e-10 * s);
    double chan = 0.0;
    for (const auto& [name, u] : res.channels) chan += u;
    EXPECT_NEAR(chan, res.u_total, 1e-10 * s);
    EXPECT_NE(res.u_vacfib, 0.0);
    EXPECT_GE(res.min_abs_delta_ghz, 0.1);
    ASSERT_FALSE(res.top.empty());
    for (std::size_t i = 1; i < res.top.size(); ++i)
        EXPECT_GE(std::abs(res.top[i - 1].u_ghz), std::abs(res.top[i].u_ghz));
}

TEST(Pt2, SinglePiPiPairFollowsEnhancementFactor) {
    for (double dz : {300.0, 900.0}) {
        const PairGeometry g = PairGeometry::lateral(200.0, 250.0, dz);
        const Mat3 t1 = t1_cylinder(g, fibre);
        double ratio[2];
        int i = 0;
        for (int n : {30, 45}) {
            const AtomState s{n, 0, 1, 1};
            const PairBasis b = make_basis(atom(), {{s, s}, {{n, 1, 3, 1}, {n - 1, 1, 3, 1}}});
            ASSERT_EQ(classify_channel(b.initial(), b.states[1]), Channel::pi_pi);
            const auto res = pt2(atom(), b, g, fibre, ChannelFilter::dipole_only());
            ratio[i++] = res.u_total / res.u0;
        }
        EXPECT_NEAR(ratio[0], pipi_ratio(dz, t1(2, 2)), 1e-10 * ratio[0]);
        EXPECT_NEAR(ratio[0], ratio[1], 1e-12 * ratio[0]);
    }
}

TEST(Pt2, QuasiResonanceIsRefused) {
    const PairBasis b = make_basis(atom(), {{s30, s30}, {{30, 1, 3, 1}, {29, 1, 3, 1}}});
    const double delta = std::abs(b.states[1].delta_ghz);
    Pt2Options o;
    o.quasi_resonance_floor_ghz = delta * 1.01;
    try {
        pt2(atom(), b, PairGeometry::lateral(200.0, 250.0, 500.0), Medium{}, ChannelFilter::dipole_only(), o);
        FAIL() << "expected QuasiResonanceError";
    } catch (const QuasiResonanceError& e) {
        EXPECT_EQ(e.pair_index(), 1u);
        EXPECT_NEAR(std::abs(e.detuning_ghz()), delta, 1e-9);
    }
}

TEST(Pt2, SManifoldIsDegenerateWithoutFineStructure) {
    const AtomModel bare(no_fine_structure());
    const PairBasis b =
        build_basis(bare, s30, s30, BasisWindow::around(30, 4, 3, 300.0), false, ManifoldMode::all_mj);
    for (const Medium& m : {Medium{}, fibre}) {
        const auto res = pt2(bare, b, PairGeometry::lateral(200.0, 250.0, 1000.0), m, ChannelFilter::dipole_only());
        ASSERT_EQ(res.manifold_shifts.size(), 4u);
        EXPECT_LT(res.manifold_spread, 1e-6);
    }
}

TEST(Diag, TwoLevelClosedForm) {
    const double v = 0.3, d = 2.0;
    Eigen::MatrixXcd h(2, 2);
    h << 0.0, v, v, -d;
    const TrackResult r = diagonalize_track(h, 1);
    EXPECT_NEAR(r.shift_ghz, -d / 2 + std::sqrt(d * d / 4 + v * v), 1e-14);
    EXPECT_GT(r.max_overlap, 0.9);
    h(0, 1) = h(1, 0) = 0.0;
    EXPECT_EQ(diagonalize_track(h, 1).shift_ghz, 0.0);
}

TEST(Diag, WeakCouplingApproachesPt2) {
    const PairBasis b = build_basis(atom(), s30, s30, BasisWindow::around(30, 3, 2, 200.0), false);
    const PairGeometry g = PairGeometry::lateral(200.0, 250.0, 1500.0);
    const Eigen::MatrixXcd h = assemble(atom(), b, g, fibre, ChannelFilter::dipole_only());
    Eigen::MatrixXcd v = h;
    v.diagonal().setZero();
    const Eigen::MatrixXcd h0 = h - v;
    Pt2Options o;
    o.quasi_resonance_floor_ghz = 0.1;
    const double u = pt2(atom(), b, g, fibre, ChannelFilter::dipole_only(), o).u_total;
    double prev = 1.0;
    for (double lambda : {1e-1, 1e-2}) {
        const double s = diagonalize_track(h0 + lambda * v, 1).shift_ghz / (lambda * lambda);
        const double err = std::abs(s / u - 1.0);
        EXPECT_LT(err, prev);
        prev = err;
    }
    EXPECT_LT(prev, 1e-3);
}

TEST(Diag, AmbiguousTrackingThrows) {
    const double v = 1.0, d = 1.0;
    Eigen::MatrixXcd h(3, 3);
    h << 0.0, v, v, v, d, 0.0, v, 0.0, -d;
    try {
        diagonalize_track(h, 1);
        FAIL() << "expected TrackingError";
    } catch (const TrackingError& e) {
        EXPECT_LT(e.max_overlap(), 0.5);
    }
}

TEST(Diag, ManifoldMembersAreReported) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(4, 4);
    h(0, 2) = h(2, 0) = 0.1;
    h(1, 3) = h(3, 1) = 0.2;
    h(2, 2) = h(3, 3) = -5.0;
    const TrackResult r = diagonalize_track(h, 2);
    ASSERT_EQ(r.member_shifts.size(), 2u);
    EXPECT_LT(r.member_shifts[0], r.member_shifts[1]);
    EXPECT_NEAR(r.member_shifts[0], -2.5 + std::sqrt(6.25 + 0.01), 1e-12);
    EXPECT_NEAR(r.member_shifts[1], -2.5 + std::sqrt(6.25 + 0.04), 1e-12);
}

TEST(FitC6, RecoversExactPowerLaw) {
    std::vector<std::pair<double, double>> s;
    for (double r = 0.5; r <= 5.0; r += 0.1) s.emplace_back(r, -1.7 / std::pow(r, 6));
    const C6Fit f = fit_c6(s);
    EXPECT_NEAR(f.c6, 1.7, 1e-10);
    EXPECT_NEAR(f.r_vdw, 0.5, 1e-12);
    EXPECT_LT(f.residual, 1e-10);
    EXPECT_EQ(f.window_size, s.size());
}

TEST(FitC6, FindsOnsetOfTheAsymptote) {
    std::vector<std::pair<double, double>> s;
    for (double r = 0.2; r <= 5.0; r += 0.05) s.emplace_back(r, -1.0 / std::pow(r, 6) - 0.3 / std::pow(r, 8));
    const C6Fit f = fit_c6(s);
    EXPECT_NEAR(f.c6, 1.0, 0.05);
    EXPECT_GT(f.r_vdw, 0.5);
    EXPECT_LE(f.residual, 0.05);
}

TEST(FitC6, RejectsBadInput) {
    EXPECT_THROW(fit_c6({{1.0, 1.0}, {2.0, 0.1}}), FitError);
    EXPECT_THROW(fit_c6({{1.0, 1.0}, {0.5, 0.1}, {2.0, 0.1}, {3.0, 0.1}}), FitError);
    std::vector<std::pair<double, double>> s;
    for (double r = 1.0; r <= 5.0; r += 0.5) s.emplace_back(r, 1.0 / (r * r * r));
    EXPECT_THROW(fit_c6(s), FitError);
}

TEST(Channels, VacuumHasNoFibreEnabledPart) {
    const PairBasis b = build_basis(atom(), s30, s30, BasisWindow::around(30, 3, 2, 200.0), false);
    const PairGeometry g = PairGeometry::lateral(200.0, 250.0, 800.0);
    Pt2Options o;
    o.quasi_resonance_floor_ghz = 0.1;
    const ChannelReport vac = channel_contributions(atom(), b, g, Medium{}, o);
    EXPECT_LT(std::abs(vac.fibre_enabled), 1e-12 * std::abs(vac.vacuum_allowed));
    const ChannelReport fib = channel_contributions(atom(), b, g, fibre, o);
    EXPECT_GT(std::abs(fib.fibre_enabled), 1e-6 * std::abs(fib.vacuum_allowed));
    EXPECT_NEAR(fib.vacuum_allowed + fib.fibre_enabled, fib.breakdown.u_total, 1e-10 * std::abs(fib.breakdown.u_total));
}

TEST(Quadrupole, NoContributionForDipoleOnlySBasis) {
    const PairBasis b = build_basis(atom(), s30, s30, BasisWindow::around(30, 3, 2, 200.0), false);
    Pt2Options o;
    o.quasi_resonance_floor_ghz = 0.1;
    const QuadReport q = quad_contribution(atom(), b, PairGeometry::lateral(200.0, 250.0, 500.0), fibre,
                                           SolverMode::pt2, o);
    // the order-4 Green set is integrated adaptively on its own, hence not bit-identical
    EXPECT_LT(std::abs(q.u_quad), 1e-7 * std::abs(q.u_with));
    EXPECT_NE(q.u_with, 0.0);
}

TEST(Quadrupole, DegenerateQuadrupolePartnersAreRefusedByPt2) {
    // near the fibre Q-Q couples 30P3/2 mj=3/2 pairs to other Zeeman pairs at zero detuning
    const AtomState p{30, 1, 3, 3};
    const PairBasis b = build_basis(atom(), p, p, BasisWindow::around(30, 1, 2, 30.0), true);
    EXPECT_THROW(quad_contribution(atom(), b, PairGeometry::lateral(200.0, 250.0, 400.0), fibre, SolverMode::pt2),
                 QuasiResonanceError);
}

TEST(Quadrupole, ContributesForPStates) {
    const AtomState p{30, 1, 3, 3};
    const PairBasis b =
        build_basis(atom(), p, p, BasisWindow::around(30, 1, 2, 30.0), true, ManifoldMode::all_mj);
    const QuadReport q = quad_contribution(atom(), b, PairGeometry::lateral(200.0, 250.0, 400.0), fibre,
                                           SolverMode::diag);
    EXPECT_NE(q.u_quad, 0.0);
    EXPECT_NEAR(q.u_with - q.u_without, q.u_quad, 1e-12 * std::abs(q.u_with));
}
