#include <benchmark/benchmark.h>

#include "rydfibre/atomic.hpp"
#include "rydfibre/hamiltonian.hpp"
#include "rydfibre/propagators.hpp"
#include "rydfibre/solver.hpp"

using namespace rydfibre;

static void BM_RadialIntegralCold(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const RadialSolver rs(QuantumDefectTable::bundled());
        benchmark::DoNotOptimize(rs.integral({n, 0, 1, 1}, {n, 1, 3, 1}, 1));
    }
}
BENCHMARK(BM_RadialIntegralCold)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_CylinderT1(benchmark::State& state) {
    const Medium m{MediumKind::cylinder, 3.9};
    const PairGeometry g = PairGeometry::lateral(200.0, 250.0, static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(t1_cylinder(g, m));
}
BENCHMARK(BM_CylinderT1)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_CylinderGreenOrder4(benchmark::State& state) {
    const PairGeometry g = PairGeometry::lateral(200.0, 250.0, 500.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(reflected_green(g, Medium{MediumKind::cylinder, 3.9}, {}, 4));
}
BENCHMARK(BM_CylinderGreenOrder4)->Unit(benchmark::kMillisecond);

static void BM_AssembleAndPt2(benchmark::State& state) {
    const AtomModel atom;
    const AtomState s{30, 0, 1, 1};
    const PairBasis b = build_basis(atom, s, s, BasisWindow::around(30, 10, 4, 500.0), false);
    const PairGeometry g = PairGeometry::lateral(200.0, 250.0, 800.0);
    const Medium m{MediumKind::cylinder, 3.9};
    Pt2Options o;
    o.quasi_resonance_floor_ghz = 0.1;
    for (auto _ : state) benchmark::DoNotOptimize(pt2(atom, b, g, m, ChannelFilter::dipole_only(), o));
    state.counters["basis"] = static_cast<double>(b.size());
}
BENCHMARK(BM_AssembleAndPt2)->Unit(benchmark::kMillisecond);

static void BM_Diagonalize(benchmark::State& state) {
    const AtomModel atom;
    const AtomState s{30, 0, 1, 1};
    const PairBasis b =
        build_basis(atom, s, s, BasisWindow::around(30, 10, 4, static_cast<double>(state.range(0))), false);
    const Eigen::MatrixXcd h =
        assemble(atom, b, PairGeometry::lateral(200.0, 250.0, 800.0), Medium{}, ChannelFilter::dipole_only());
    for (auto _ : state) benchmark::DoNotOptimize(diagonalize_track(h, 1));
    state.counters["basis"] = static_cast<double>(b.size());
}
BENCHMARK(BM_Diagonalize)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
