#pragma once

#include <vector>

#include "rydfibre/geometry.hpp"
#include "rydfibre/propagators.hpp"

namespace rydfibre {

/// Single pi-pi channel enhancement (1 + 2 pi dz^3 T1zz)^2; dz in nm, t1zz in nm^-3.
double pipi_ratio(double dz, double t1zz);

/// Free-space lateral propagator diag(-1, -1, 2)/(4 pi dz^3).
Mat3 t0_lateral(double dz);

/// 4 |d+ . (T0 + T1) . d+|^2 for unit sigma+ dipoles along the axis
/// (theta, phi), lateral configuration. The factor 4 makes the phi = 0 and
/// theta = pi/2 slices read (T0s + Tm - dT)^2 (sin^2 theta - eta1)^2 and
/// (T0s + Tm)^2 (1 - eta2 cos 2phi)^2 with T0s = 3/(4 pi dz^3).
double sigma_model(double theta, double phi, double dz, const Mat3& t1);

struct EtaReport {
    double t0_scalar = 0.0;
    double t_m = 0.0;
    double delta_t = 0.0;
    double eta1 = 0.0;
    double eta2 = 0.0;
    double a1 = 0.0;
    double a2 = 0.0;
    double theta_min = 0.0;  // rad; NaN when out of range
    bool in_range = false;   // 0 <= eta1 <= 1
};

EtaReport eta_from_t1(double dz, const Mat3& t1);
EtaReport eta_report(const PairGeometry& geometry, const Medium& medium,
                     const CylQuadParams& q = {});

struct ForsterPoint {
    int n = 0;
    double delta1_ghz = 0.0;  // 2E(nP3/2) - E(nS1/2) - E((n-1)D5/2)
    double delta2_ghz = 0.0;  // 2E(nP3/2) - E(nS1/2) - E((n+1)S1/2)
    double ratio = 0.0;       // delta1/delta2
    bool delta2_sign_change = false;  // sign differs from the previous n
};

std::vector<ForsterPoint> forster_scan(const QuantumDefectTable& table, int n_min, int n_max);

}  // namespace rydfibre
