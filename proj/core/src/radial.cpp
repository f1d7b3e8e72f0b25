#include "rydfibre/radial.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "rydfibre/error.hpp"
#include "rydfibre/units.hpp"

namespace rydfibre {

RadialSolver::RadialSolver(const QuantumDefectTable& table, RadialOptions opts)
    : table_(table), opts_(opts) {
    if (!(opts_.step > 0.0)) throw InvalidStateError("radial grid step must be positive");
}

std::shared_ptr<const RadialWave> RadialSolver::solve(int n, int l, int two_j) const {
    const AtomState s{n, l, two_j, two_j};
    s.validate();
    const double e = units::ghz_to_hartree(table_.energy(s));
    if (!(e < 0.0)) throw RadialConvergenceError("unbound level " + s.label());

    const double h = opts_.step;
    const double r_max = 2.0 * n * (n + 15.0);
    const double alpha = table_.core_polarizability_au();
    const double r_cut = std::max(alpha > 0.0 ? std::cbrt(alpha) : 0.0, opts_.inner_floor);

    // Langer-corrected turning points of (l+1/2)^2/(2r^2) - 1/r = E.
    const double c = 0.5 * (l + 0.5) * (l + 0.5);
    const double eps = -e;
    const double disc = 1.0 - 4.0 * eps * c;
    if (disc <= 0.0) throw RadialConvergenceError("no classically allowed region for " + s.label());
    const double r_turn_in = (1.0 - std::sqrt(disc)) / (2.0 * eps);
    const double r_turn_out = (1.0 + std::sqrt(disc)) / (2.0 * eps);
    if (r_turn_out >= r_max || r_cut >= r_turn_out)
        throw RadialConvergenceError("radial grid does not bracket the classical region of " +
                                     s.label());

    const int k_top = static_cast<int>(std::floor(std::log(r_max) / h));
    const int k_low = static_cast<int>(std::ceil(std::log(r_cut) / h));
    const double lh2 = (l + 0.5) * (l + 0.5);
    auto g = [&](int k) {
        const double r = std::exp(k * h);
        return lh2 + 2.0 * r * r * (-1.0 / r - e);
    };
    const double h12 = h * h / 12.0;

    // Inward Numerov, stored top-down then reversed.
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(k_top - k_low + 1));
    w.push_back(0.0);
    w.push_back(1e-30);
    double g_next = g(k_top);
    double g_cur = g(k_top - 1);
    int k = k_top - 1;
    double u_prev = std::abs(w[1]) * std::exp(0.5 * k * h);
    while (k - 1 >= k_low) {
        const double g_prev = g(k - 1);
        const std::size_t i = w.size() - 1;
        const double val = (2.0 * (1.0 + 5.0 * h12 * g_cur) * w[i] - (1.0 - h12 * g_next) * w[i - 1]) /
                           (1.0 - h12 * g_prev);
        --k;
        const double r = std::exp(k * h);
        const double u = std::abs(val) * std::sqrt(r);
        // Below the inner turning point the inward solution picks up the
        // irregular branch; stop once |u| starts growing again.
        if (r < r_turn_in && u > u_prev) {
            ++k;
            break;
        }
        w.push_back(val);
        if (std::abs(val) > 1e200) {
            for (double& x : w) x *= 1e-200;
        }
        u_prev = u;
        g_next = g_cur;
        g_cur = g_prev;
    }
    std::reverse(w.begin(), w.end());

    auto wave = std::make_shared<RadialWave>();
    wave->k_begin = k;
    wave->energy_au = e;
    wave->r_inner = std::exp(k * h);
    wave->w = std::move(w);

    const double norm = radial_overlap(*wave, *wave, 0, h);
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw RadialConvergenceError("radial normalisation failed for " + s.label());
    const double scale = 1.0 / std::sqrt(norm);
    for (double& x : wave->w) x *= scale;
    return wave;
}

double radial_overlap(const RadialWave& a, const RadialWave& b, int power, double step) {
    const int k0 = std::max(a.k_begin, b.k_begin);
    const int k1 = std::min(a.k_end(), b.k_end());
    if (k1 - k0 < 2) return 0.0;
    const double p = 2.0 + power;
    double sum = 0.0;
    for (int k = k0; k < k1; ++k) {
        const double f = std::exp(p * k * step) * a.w[k - a.k_begin] * b.w[k - b.k_begin];
        sum += (k == k0 || k == k1 - 1) ? 0.5 * f : f;
    }
    return sum * step;
}

std::shared_ptr<const RadialWave> RadialSolver::wave(int n, int l, int two_j) const {
    const WaveKey key{n, l, two_j};
    {
        std::shared_lock lock(mutex_);
        if (auto it = waves_.find(key); it != waves_.end()) return it->second;
    }
    auto solved = solve(n, l, two_j);
    std::unique_lock lock(mutex_);
    auto [it, inserted] = waves_.emplace(key, std::move(solved));
    return it->second;
}

double RadialSolver::integral(const AtomState& a, const AtomState& b, int power) const {
    auto ka = std::make_tuple(a.n, a.l, a.two_j);
    auto kb = std::make_tuple(b.n, b.l, b.two_j);
    if (kb < ka) std::swap(ka, kb);
    const IntegralKey key{std::get<0>(ka), std::get<1>(ka), std::get<2>(ka),
                          std::get<0>(kb), std::get<1>(kb), std::get<2>(kb), power};
    {
        std::shared_lock lock(mutex_);
        if (auto it = integrals_.find(key); it != integrals_.end()) return it->second;
    }
    const auto wa = wave(std::get<0>(ka), std::get<1>(ka), std::get<2>(ka));
    const auto wb = wave(std::get<0>(kb), std::get<1>(kb), std::get<2>(kb));
    const double value = radial_overlap(*wa, *wb, power, opts_.step);
    std::unique_lock lock(mutex_);
    integrals_.emplace(key, value);
    return value;
}

std::size_t RadialSolver::cached_waves() const {
    std::shared_lock lock(mutex_);
    return waves_.size();
}

}  // namespace rydfibre
