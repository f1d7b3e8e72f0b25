#include "rydfibre/models.hpp"

#include <cmath>
#include <limits>

#include "rydfibre/error.hpp"
#include "rydfibre/units.hpp"

namespace rydfibre {

double pipi_ratio(double dz, double t1zz) {
    const double f = 1.0 + 2.0 * units::pi * dz * dz * dz * t1zz;
    return f * f;
}

Mat3 t0_lateral(double dz) {
    const double c = 1.0 / (4.0 * units::pi * dz * dz * dz);
    return Eigen::Vector3d(-c, -c, 2.0 * c).asDiagonal();
}

double sigma_model(double theta, double phi, double dz, const Mat3& t1) {
    const QuantizationAxis axis{theta, phi};
    const Vec3c d = axis.spherical_conj(1);
    const Mat3c t = (t0_lateral(dz) + t1).cast<cplx>();
    const cplx v = (d.transpose() * t * d)(0, 0);
    return 4.0 * std::norm(v);
}

EtaReport eta_from_t1(double dz, const Mat3& t1) {
    EtaReport r;
    const auto c = anisotropy_coeffs(t1);
    r.t0_scalar = 3.0 / (4.0 * units::pi * dz * dz * dz);
    r.t_m = c.t_m;
    r.delta_t = c.delta_t;
    r.eta1 = -2.0 * c.delta_t / (r.t0_scalar + c.t_m - c.delta_t);
    r.eta2 = -c.delta_t / (r.t0_scalar + c.t_m);
    r.a1 = r.eta1 * r.eta1;
    r.a2 = (1.0 - r.eta1) * (1.0 - r.eta1);
    r.in_range = r.eta1 >= 0.0 && r.eta1 <= 1.0;
    r.theta_min = r.in_range ? std::asin(std::sqrt(r.eta1)) : std::numeric_limits<double>::quiet_NaN();
    return r;
}

EtaReport eta_report(const PairGeometry& geometry, const Medium& medium, const CylQuadParams& q) {
    if (!geometry.lateral()) throw GeometryError("eta report needs the lateral configuration");
    return eta_from_t1(geometry.dz, t1(geometry, medium, q));
}

std::vector<ForsterPoint> forster_scan(const QuantumDefectTable& table, int n_min, int n_max) {
    if (n_min < 3 || n_max < n_min) throw ConfigError("invalid Forster n range");
    std::vector<ForsterPoint> out;
    for (int n = n_min; n <= n_max; ++n) {
        const double ep = table.energy({n, 1, 3, 3});
        const double es = table.energy({n, 0, 1, 1});
        const double ed = table.energy({n - 1, 2, 5, 5});
        const double es1 = table.energy({n + 1, 0, 1, 1});
        ForsterPoint p;
        p.n = n;
        p.delta1_ghz = 2.0 * ep - es - ed;
        p.delta2_ghz = 2.0 * ep - es - es1;
        p.ratio = p.delta1_ghz / p.delta2_ghz;
        if (!out.empty()) p.delta2_sign_change = (p.delta2_ghz < 0.0) != (out.back().delta2_ghz < 0.0);
        out.push_back(p);
    }
    return out;
}

}  // namespace rydfibre
