#pragma once

#include <string>

#include "rydfibre/atomic.hpp"

namespace rydfibre {

enum class MediumKind { vacuum, half_space, cylinder };

std::string to_string(MediumKind k);
MediumKind medium_kind_from_string(const std::string& s);

/// Static dielectric environment. For the half-space the dielectric fills
/// x < a; for the cylinder it fills rho < a around the z axis.
struct Medium {
    MediumKind kind = MediumKind::vacuum;
    double epsilon = 3.9;

    void validate() const;
    /// (eps - 1)/(eps + 1), the image-charge factor.
    double image_factor() const { return (epsilon - 1.0) / (epsilon + 1.0); }
};

/// Atom A at cylindrical (R_A, 0, 0), atom B at (R_B, dphi, dz); lengths in nm.
struct PairGeometry {
    double a = 200.0;
    double r_a = 250.0;
    double r_b = 250.0;
    double dphi = 0.0;
    double dz = 1000.0;
    QuantizationAxis axis{};

    Vec3 pos_a() const;
    Vec3 pos_b() const;
    double r_ab() const;
    /// Cosine of the angle between the interatomic axis and the fibre axis.
    double cos_theta_ab() const;
    bool lateral() const;

    /// Throws GeometryError for coincident atoms or atoms inside the medium.
    void validate(const Medium& medium) const;

    /// Lateral configuration at equal radius R.
    static PairGeometry lateral(double a, double r, double dz, QuantizationAxis axis = {});
};

/// Cylinder quadrature controls.
struct CylQuadParams {
    int m_max = 120;
    double rel_tol = 1e-8;
    double k_max_scale = 40.0;
    int max_panels = 4000;
};

}  // namespace rydfibre
