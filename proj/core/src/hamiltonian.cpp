#include "rydfibre/hamiltonian.hpp"

#include <cstdlib>

#include "rydfibre/error.hpp"
#include "rydfibre/propagators.hpp"
#include "rydfibre/units.hpp"

namespace rydfibre {

int ChannelFilter::green_order() const {
    if (quadrupole_quadrupole) return 4;
    if (dipole_quadrupole) return 3;
    return 2;
}

ChannelFilter ChannelFilter::dipole_only() { return {}; }

ChannelFilter ChannelFilter::with_quadrupole() {
    ChannelFilter f;
    f.dipole_quadrupole = true;
    f.quadrupole_quadrupole = true;
    return f;
}

ChannelFilter ChannelFilter::only(Channel c) {
    ChannelFilter f;
    f.channels = {false, false, false, false};
    f.channels[static_cast<std::size_t>(c)] = true;
    return f;
}

PairCoupler::PairCoupler(const AtomModel& atom, QuantizationAxis axis) : atom_(atom), axis_(axis) {}

std::uint32_t PairCoupler::id(const AtomState& s) {
    const std::uint64_t key = (static_cast<std::uint64_t>(s.n) << 32) |
                              (static_cast<std::uint64_t>(s.l & 0xff) << 24) |
                              (static_cast<std::uint64_t>(s.two_j & 0xff) << 16) |
                              static_cast<std::uint64_t>((s.two_m + 0x100) & 0xffff);
    auto [it, inserted] = ids_.emplace(key, static_cast<std::uint32_t>(ids_.size()));
    return it->second;
}

const Vec3c& PairCoupler::dipole(const AtomState& from, const AtomState& to) {
    const std::uint64_t key = (static_cast<std::uint64_t>(id(from)) << 32) | id(to);
    if (auto it = dip_.find(key); it != dip_.end()) return it->second;
    return dip_.emplace(key, atom_.dipole_vector(from, to, axis_)).first->second;
}

const Mat3c& PairCoupler::quadrupole(const AtomState& from, const AtomState& to) {
    const std::uint64_t key = (static_cast<std::uint64_t>(id(from)) << 32) | id(to);
    if (auto it = quad_.find(key); it != quad_.end()) return it->second;
    return quad_.emplace(key, atom_.quadrupole_tensor(from, to, axis_)).first->second;
}

bool PairCoupler::dipole_pair_step(const PairState& to, const PairState& from) {
    return AtomModel::dipole_allowed(from.a, to.a) && AtomModel::dipole_allowed(from.b, to.b);
}

std::complex<double> PairCoupler::coupling(const PairState& to, const PairState& from,
                                           const GreenDerivatives& g, const ChannelFilter& filter) {
    std::complex<double> v(0.0, 0.0);
    const bool dip_a = AtomModel::dipole_allowed(from.a, to.a);
    const bool dip_b = AtomModel::dipole_allowed(from.b, to.b);

    if (dip_a && dip_b) {
        if (!filter.dipole_dipole) return v;
        const Channel ch = classify_channel(to.a.two_m - from.a.two_m, to.b.two_m - from.b.two_m);
        if (!filter.allows(ch)) return v;
        const Vec3c& da = dipole(from.a, to.a);
        const Vec3c& db = dipole(from.b, to.b);
        v = (da.transpose() * g.d11.cast<std::complex<double>>() * db)(0, 0);
        return v * units::coupling_to_ghz(2);
    }
    if (!filter.any_quadrupole()) return v;

    const bool quad_a = AtomModel::quadrupole_allowed(from.a, to.a);
    const bool quad_b = AtomModel::quadrupole_allowed(from.b, to.b);
    if (filter.dipole_quadrupole && g.order >= 3) {
        if (dip_a && quad_b) {
            const Vec3c& da = dipole(from.a, to.a);
            const Mat3c& qb = quadrupole(from.b, to.b);
            std::complex<double> s(0.0, 0.0);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) s += da[i] * qb(j, k) * g.d12(i, j, k);
            v += s * units::coupling_to_ghz(3);
        }
        if (quad_a && dip_b) {
            const Mat3c& qa = quadrupole(from.a, to.a);
            const Vec3c& db = dipole(from.b, to.b);
            std::complex<double> s(0.0, 0.0);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) s += qa(i, j) * db[k] * g.d21(i, j, k);
            v += s * units::coupling_to_ghz(3);
        }
    }
    if (filter.quadrupole_quadrupole && g.order >= 4 && quad_a && quad_b) {
        const Mat3c& qa = quadrupole(from.a, to.a);
        const Mat3c& qb = quadrupole(from.b, to.b);
        std::complex<double> s(0.0, 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (qa(i, j) == std::complex<double>(0.0)) continue;
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l) s += qa(i, j) * qb(k, l) * g.d22(i, j, k, l);
            }
        v += s * units::coupling_to_ghz(4);
    }
    return v;
}

Eigen::MatrixXcd interaction_matrix(const AtomModel& atom, const PairBasis& basis,
                                    const GreenDerivatives& g, const QuantizationAxis& axis,
                                    const ChannelFilter& filter, const AssemblyOptions& opts) {
    const auto n = basis.states.size();
    if (n > opts.max_basis)
        throw BasisTooLargeError("pair basis has " + std::to_string(n) + " states, limit " +
                                 std::to_string(opts.max_basis));
    PairCoupler coupler(atom, axis);
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r <= c; ++r) {
            const auto val = coupler.coupling(basis.states[r], basis.states[c], g, filter);
            const auto ri = static_cast<Eigen::Index>(r), ci = static_cast<Eigen::Index>(c);
            if (r == c) {
                v(ri, ci) = val.real();
            } else {
                v(ri, ci) = val;
                v(ci, ri) = std::conj(val);
            }
        }
    return v;
}

Eigen::MatrixXcd assemble(const AtomModel& atom, const PairBasis& basis, const PairGeometry& geometry,
                          const Medium& medium, const ChannelFilter& filter,
                          const AssemblyOptions& opts) {
    if (basis.states.size() > opts.max_basis)
        throw BasisTooLargeError("pair basis has " + std::to_string(basis.states.size()) +
                                 " states, limit " + std::to_string(opts.max_basis));
    const auto g = green_total(geometry, medium, opts.quadrature, filter.green_order());
    Eigen::MatrixXcd h = interaction_matrix(atom, basis, g, geometry.axis, filter, opts);
    for (std::size_t i = 0; i < basis.states.size(); ++i)
        h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) -= basis.states[i].delta_ghz;
    return h;
}

}  // namespace rydfibre
