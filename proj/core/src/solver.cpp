#include "rydfibre/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "rydfibre/error.hpp"
#include "rydfibre/propagators.hpp"

namespace rydfibre {

PotentialBreakdown pt2(const AtomModel& atom, const PairBasis& basis, const GreenDerivatives& g0,
                       const GreenDerivatives& g1, const QuantizationAxis& axis,
                       const ChannelFilter& filter, const Pt2Options& opts) {
    if (basis.states.empty()) throw EmptyBasisError("empty pair basis");
    PairCoupler coupler(atom, axis);
    const std::size_t nm = basis.manifold_size;
    const auto& st = basis.states;

    PotentialBreakdown out;
    for (Channel c : all_channels) out.channels[to_string(c)] = 0.0;
    out.channels["quadrupole"] = 0.0;
    out.min_abs_delta_ghz = std::numeric_limits<double>::infinity();

    // Couplings of every manifold member to the outside states, kept for the
    // effective Hamiltonian.
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(nm),
                                                static_cast<Eigen::Index>(nm));
    std::vector<std::complex<double>> col(nm);
    std::vector<PairContribution> contribs;
    for (std::size_t k = nm; k < st.size(); ++k) {
        const auto v0 = coupler.coupling(st[k], st[0], g0, filter);
        const auto v1 = coupler.coupling(st[k], st[0], g1, filter);
        bool coupled = std::abs(v0 + v1) > 0.0;
        for (std::size_t i = 0; i < nm; ++i) {
            col[i] = i == 0 ? v0 + v1
                            : coupler.coupling(st[k], st[i], g0, filter) +
                                  coupler.coupling(st[k], st[i], g1, filter);
            coupled = coupled || std::abs(col[i]) > 0.0;
        }
        if (!coupled) continue;
        const double delta = st[k].delta_ghz;
        out.min_abs_delta_ghz = std::min(out.min_abs_delta_ghz, std::abs(delta));
        if (std::abs(delta) < opts.quasi_resonance_floor_ghz)
            throw QuasiResonanceError("pair " + st[k].a.label() + " x " + st[k].b.label() +
                                          " is quasi-resonant; perturbation theory refused",
                                      k, delta);
        const double u = std::norm(v0 + v1) / delta;
        out.u_total += u;
        out.u0 += std::norm(v0) / delta;
        out.u_vacfib += 2.0 * std::real(v0 * std::conj(v1)) / delta;
        out.u_fibfib += std::norm(v1) / delta;
        std::string ch = "quadrupole";
        if (PairCoupler::dipole_pair_step(st[k], st[0]))
            ch = to_string(classify_channel(st[k].a.two_m - st[0].a.two_m,
                                            st[k].b.two_m - st[0].b.two_m));
        out.channels[ch] += u;
        if (u != 0.0) contribs.push_back({k, st[k], u, ch});
        for (std::size_t i = 0; i < nm; ++i)
            for (std::size_t j = 0; j < nm; ++j)
                w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
                    std::conj(col[i]) * col[j] / delta;
    }
    if (!std::isfinite(out.min_abs_delta_ghz)) out.min_abs_delta_ghz = 0.0;

    GreenDerivatives gt = g0;
    gt += g1;
    out.u_first = std::real(coupler.coupling(st[0], st[0], gt, filter));

    std::sort(contribs.begin(), contribs.end(),
              [](const auto& a, const auto& b) { return std::abs(a.u_ghz) > std::abs(b.u_ghz); });
    if (contribs.size() > opts.top_k) contribs.resize(opts.top_k);
    out.top = std::move(contribs);

    if (nm == 1) {
        out.manifold_shifts = {out.u_total};
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(w);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            out.manifold_shifts.push_back(es.eigenvalues()[i]);
        const double lo = out.manifold_shifts.front(), hi = out.manifold_shifts.back();
        const double scale = std::max(std::abs(lo), std::abs(hi));
        out.manifold_spread = scale > 0.0 ? (hi - lo) / scale : 0.0;
    }
    return out;
}

PotentialBreakdown pt2(const AtomModel& atom, const PairBasis& basis, const PairGeometry& geometry,
                       const Medium& medium, const ChannelFilter& filter, const Pt2Options& opts) {
    geometry.validate(medium);
    const int order = filter.green_order();
    const auto g0 = vacuum_green(geometry.pos_a(), geometry.pos_b(), order);
    const auto g1 = reflected_green(geometry, medium, opts.quadrature, order);
    return pt2(atom, basis, g0, g1, geometry.axis, filter, opts);
}

TrackResult diagonalize_track(const Eigen::MatrixXcd& h, std::size_t manifold_size) {
    const auto n = h.rows();
    if (n == 0 || h.cols() != n) throw InvalidStateError("Hamiltonian must be square and nonempty");
    if (manifold_size == 0 || static_cast<Eigen::Index>(manifold_size) > n)
        throw InvalidStateError("initial manifold out of range");

    Eigen::VectorXd evals;
    Eigen::MatrixXd weights;  // |v_i|^2 per eigenvector column
    if (h.imag().isZero(0.0)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.real());
        if (es.info() != Eigen::Success) throw InvalidStateError("eigensolver failed");
        evals = es.eigenvalues();
        weights = es.eigenvectors().array().square().matrix();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
        if (es.info() != Eigen::Success) throw InvalidStateError("eigensolver failed");
        evals = es.eigenvalues();
        weights = es.eigenvectors().cwiseAbs2();
    }
    const auto m = static_cast<Eigen::Index>(manifold_size);
    const Eigen::VectorXd overlap = weights.topRows(m).colwise().sum().transpose();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return overlap[a] > overlap[b]; });
    const double best = overlap[order[0]];
    if (best < 0.5)
        throw TrackingError("adiabatic tracking ambiguous: max overlap " + std::to_string(best), best);

    TrackResult r;
    r.max_overlap = best;
    double wsum = 0.0, esum = 0.0;
    for (std::size_t i = 0; i < manifold_size; ++i) {
        const auto idx = order[i];
        r.member_shifts.push_back(evals[idx]);
        r.overlaps.push_back(overlap[idx]);
        wsum += overlap[idx];
        esum += overlap[idx] * evals[idx];
    }
    std::sort(r.member_shifts.begin(), r.member_shifts.end());
    r.shift_ghz = esum / wsum;
    return r;
}

C6Fit fit_c6(const std::vector<std::pair<double, double>>& samples, const FitOptions& opts) {
    const std::size_t n = samples.size();
    if (n < 4) throw FitError("need at least 4 samples");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(samples[i].first > 0.0)) throw FitError("separations must be positive");
        if (i > 0 && !(samples[i].first > samples[i - 1].first))
            throw FitError("separations must be strictly increasing");
    }
    std::vector<double> y(n), slope(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = samples[i].second * std::pow(samples[i].first, 6);

    // Local log-log slope of |U|; NaN where U changes sign.
    auto ls = [&](std::size_t i, std::size_t j) {
        const double ui = samples[i].second, uj = samples[j].second;
        if (ui == 0.0 || uj == 0.0 || (ui > 0) != (uj > 0)) return std::nan("");
        return (std::log(std::abs(uj)) - std::log(std::abs(ui))) /
               (std::log(samples[j].first) - std::log(samples[i].first));
    };
    for (std::size_t i = 0; i < n; ++i)
        slope[i] = i == 0 ? ls(0, 1) : i == n - 1 ? ls(n - 2, n - 1) : ls(i - 1, i + 1);

    C6Fit best;
    bool found = false;
    for (std::size_t b = n - 2;; --b) {
        double mean = 0.0;
        for (std::size_t i = b; i < n; ++i) mean += y[i];
        mean /= static_cast<double>(n - b);
        bool ok = mean != 0.0;
        double rss = 0.0;
        for (std::size_t i = b; i < n && ok; ++i) {
            if (!(std::abs(slope[i] + 6.0) <= opts.slope_tolerance)) ok = false;
            const double dev = (y[i] - mean) / mean;
            if (!(std::abs(dev) <= opts.asymptote_tolerance)) ok = false;
            rss += dev * dev;
        }
        if (!ok) break;
        found = true;
        best.c6 = -mean;
        best.r_vdw = samples[b].first;
        best.residual = std::sqrt(rss / static_cast<double>(n - b));
        best.window_begin = b;
        best.window_size = n - b;
        if (b == 0) break;
    }
    if (!found) throw FitError("no r^-6 asymptote in the samples");
    return best;
}

ChannelReport channel_contributions(const AtomModel& atom, const PairBasis& basis,
                                    const PairGeometry& geometry, const Medium& medium,
                                    const Pt2Options& opts) {
    ChannelReport r;
    r.breakdown = pt2(atom, basis, geometry, medium, ChannelFilter::dipole_only(), opts);
    const auto& c = r.breakdown.channels;
    r.vacuum_allowed = c.at(to_string(Channel::pi_pi)) + c.at(to_string(Channel::sigma_sigma_opposite));
    r.fibre_enabled = c.at(to_string(Channel::pi_sigma)) + c.at(to_string(Channel::sigma_sigma_same));
    if (r.breakdown.u0 != 0.0) {
        r.vacuum_allowed_ratio = r.vacuum_allowed / r.breakdown.u0;
        r.fibre_enabled_ratio = r.fibre_enabled / r.breakdown.u0;
    }
    return r;
}

QuadReport quad_contribution(const AtomModel& atom, const PairBasis& basis,
                             const PairGeometry& geometry, const Medium& medium, SolverMode mode,
                             const Pt2Options& opts, const AssemblyOptions& aopts) {
    QuadReport r;
    const auto with = ChannelFilter::with_quadrupole();
    const auto without = ChannelFilter::dipole_only();
    if (mode == SolverMode::pt2) {
        r.u_with = pt2(atom, basis, geometry, medium, with, opts).u_with_first();
        r.u_without = pt2(atom, basis, geometry, medium, without, opts).u_with_first();
    } else {
        r.u_with = diagonalize_track(assemble(atom, basis, geometry, medium, with, aopts),
                                     basis.manifold_size).shift_ghz;
        r.u_without = diagonalize_track(assemble(atom, basis, geometry, medium, without, aopts),
                                        basis.manifold_size).shift_ghz;
    }
    r.u_quad = r.u_with - r.u_without;
    return r;
}

}  // namespace rydfibre
