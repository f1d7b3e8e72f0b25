#include "rydfibre/pair_basis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include "rydfibre/angular.hpp"
#include "rydfibre/error.hpp"

namespace rydfibre {

BasisWindow BasisWindow::around(int n, int dn, int l_max, double cutoff_ghz) {
    return {std::max(1, n - dn), n + dn, l_max, cutoff_ghz};
}

void BasisWindow::validate() const {
    if (n_min < 1 || n_max < n_min) throw ConfigError("empty n window");
    if (l_max < 0) throw ConfigError("negative L_max");
    if (!(energy_cutoff_ghz > 0.0)) throw ConfigError("energy cutoff must be positive");
}

namespace {

bool in_window(const AtomModel& atom, const AtomState& s, const BasisWindow& w) {
    return s.n >= w.n_min && s.n <= w.n_max && s.l <= w.l_max && s.valid() &&
           atom.table().has_series(s.l, s.two_j);
}

// Single-atom states reachable from `s` by a nonzero rank-k (k = 1 or 2)
// spherical-harmonic element inside the window.
std::vector<AtomState> reachable(const AtomModel& atom, const AtomState& s, int k,
                                 const BasisWindow& w) {
    std::vector<AtomState> out;
    const std::vector<int> dls = k == 1 ? std::vector<int>{-1, 1} : std::vector<int>{-2, 0, 2};
    for (int n = w.n_min; n <= w.n_max; ++n)
        for (int dl : dls) {
            const int l = s.l + dl;
            if (l < 0 || l >= n || l > w.l_max) continue;
            for (int two_j : {2 * l - 1, 2 * l + 1}) {
                if (two_j < 1) continue;
                for (int dm = -k; dm <= k; ++dm) {
                    const AtomState t{n, l, two_j, s.two_m + 2 * dm};
                    if (!in_window(atom, t, w)) continue;
                    if (angular::ck_matrix_element(t.l, t.two_j, t.two_m, k, dm, s.l, s.two_j,
                                                   s.two_m) == 0.0)
                        continue;
                    out.push_back(t);
                }
            }
        }
    return out;
}

bool pair_less(const PairState& x, const PairState& y) {
    const double dx = std::abs(x.delta_ghz), dy = std::abs(y.delta_ghz);
    if (dx != dy) return dx < dy;
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
}

}  // namespace

PairBasis build_basis(const AtomModel& atom, const AtomState& a, const AtomState& b,
                      const BasisWindow& window, bool quad_enabled, ManifoldMode mode) {
    window.validate();
    a.validate();
    b.validate();
    if (!in_window(atom, a, window) || !in_window(atom, b, window))
        throw EmptyBasisError("basis window excludes the initial pair");
    const double e0 = atom.energy(a) + atom.energy(b);

    std::vector<std::pair<AtomState, AtomState>> manifold{{a, b}};
    if (mode == ManifoldMode::all_mj) {
        for (int ma = -a.two_j; ma <= a.two_j; ma += 2)
            for (int mb = -b.two_j; mb <= b.two_j; mb += 2) {
                const AtomState ka{a.n, a.l, a.two_j, ma}, kb{b.n, b.l, b.two_j, mb};
                if (ka == a && kb == b) continue;
                manifold.emplace_back(ka, kb);
            }
    }
    std::set<std::pair<AtomState, AtomState>> seen(manifold.begin(), manifold.end());

    std::vector<PairState> coupled;
    auto consider = [&](const AtomState& ka, const AtomState& kb) {
        if (!seen.insert({ka, kb}).second) return;
        const double delta = e0 - (atom.energy(ka) + atom.energy(kb));
        if (std::abs(delta) > window.energy_cutoff_ghz) return;
        coupled.push_back({ka, kb, delta});
    };

    for (const auto& [ma, mb] : manifold) {
        const auto da = reachable(atom, ma, 1, window);
        const auto db = reachable(atom, mb, 1, window);
        for (const auto& x : da)
            for (const auto& y : db) consider(x, y);
        if (!quad_enabled) continue;
        auto qa = reachable(atom, ma, 2, window);
        auto qb = reachable(atom, mb, 2, window);
        // reachable() already contains the permanent quadrupole (same level)
        // when its rank-2 element is nonzero.
        for (const auto& x : da)
            for (const auto& y : qb) consider(x, y);
        for (const auto& x : qa)
            for (const auto& y : db) consider(x, y);
        for (const auto& x : qa)
            for (const auto& y : qb) consider(x, y);
    }

    std::sort(coupled.begin(), coupled.end(), pair_less);
    PairBasis basis;
    basis.window = window;
    basis.quadrupole = quad_enabled;
    basis.manifold_size = manifold.size();
    for (const auto& [ma, mb] : manifold)
        basis.states.push_back({ma, mb, e0 - (atom.energy(ma) + atom.energy(mb))});
    basis.states.front().delta_ghz = 0.0;
    basis.states.insert(basis.states.end(), coupled.begin(), coupled.end());
    return basis;
}

PairBasis make_basis(const AtomModel& atom, const std::vector<std::pair<AtomState, AtomState>>& pairs,
                     std::size_t manifold_size) {
    if (pairs.empty()) throw EmptyBasisError("no pair states given");
    PairBasis basis;
    basis.manifold_size = std::max<std::size_t>(1, manifold_size);
    const double e0 = atom.energy(pairs.front().first) + atom.energy(pairs.front().second);
    for (const auto& [a, b] : pairs) basis.states.push_back({a, b, e0 - atom.energy(a) - atom.energy(b)});
    basis.states.front().delta_ghz = 0.0;
    return basis;
}

std::string to_string(Channel c) {
    switch (c) {
        case Channel::pi_pi: return "pi-pi";
        case Channel::pi_sigma: return "pi-sigma";
        case Channel::sigma_sigma_same: return "sigma-sigma-same";
        case Channel::sigma_sigma_opposite: return "sigma-sigma-opposite";
    }
    return "unknown";
}

Channel classify_channel(int two_dm_a, int two_dm_b) {
    if (std::abs(two_dm_a) > 2 || std::abs(two_dm_b) > 2 || two_dm_a % 2 != 0 || two_dm_b % 2 != 0)
        throw ChannelError("not a single dipole step per atom");
    const int qa = two_dm_a / 2, qb = two_dm_b / 2;
    if (qa == 0 && qb == 0) return Channel::pi_pi;
    if (qa == 0 || qb == 0) return Channel::pi_sigma;
    return qa == qb ? Channel::sigma_sigma_same : Channel::sigma_sigma_opposite;
}

Channel classify_channel(const PairState& from, const PairState& to) {
    if (std::abs(from.a.l - to.a.l) != 1 || std::abs(from.b.l - to.b.l) != 1)
        throw ChannelError("pair states are not related by one dipole step per atom");
    return classify_channel(to.a.two_m - from.a.two_m, to.b.two_m - from.b.two_m);
}

void write_basis_csv(std::ostream& os, const PairBasis& basis) {
    os << "idx,nA,LA,2JA,2MJA,nB,LB,2JB,2MJB,delta_GHz\n";
    char buf[64];
    for (std::size_t i = 0; i < basis.states.size(); ++i) {
        const auto& p = basis.states[i];
        std::snprintf(buf, sizeof buf, "%.17g", p.delta_ghz);
        os << i << ',' << p.a.n << ',' << p.a.l << ',' << p.a.two_j << ',' << p.a.two_m << ','
           << p.b.n << ',' << p.b.l << ',' << p.b.two_j << ',' << p.b.two_m << ',' << buf << '\n';
    }
}

}  // namespace rydfibre
