#include "rydfibre/geometry.hpp"

#include <cmath>

#include "rydfibre/error.hpp"

namespace rydfibre {

std::string to_string(MediumKind k) {
    switch (k) {
        case MediumKind::vacuum: return "vacuum";
        case MediumKind::half_space: return "half-space";
        case MediumKind::cylinder: return "cylinder";
    }
    return "unknown";
}

MediumKind medium_kind_from_string(const std::string& s) {
    if (s == "vacuum") return MediumKind::vacuum;
    if (s == "half-space" || s == "halfspace" || s == "plane") return MediumKind::half_space;
    if (s == "cylinder" || s == "fibre" || s == "fiber") return MediumKind::cylinder;
    throw ConfigError("unknown medium '" + s + "'");
}

void Medium::validate() const {
    if (kind != MediumKind::vacuum && !(epsilon > 1.0))
        throw GeometryError("static permittivity must exceed 1");
}

Vec3 PairGeometry::pos_a() const { return {r_a, 0.0, 0.0}; }

Vec3 PairGeometry::pos_b() const { return {r_b * std::cos(dphi), r_b * std::sin(dphi), dz}; }

double PairGeometry::r_ab() const {
    return std::sqrt(dz * dz + r_a * r_a + r_b * r_b - 2.0 * r_a * r_b * std::cos(dphi));
}

double PairGeometry::cos_theta_ab() const { return dz / r_ab(); }

bool PairGeometry::lateral() const { return dphi == 0.0 && r_a == r_b; }

void PairGeometry::validate(const Medium& medium) const {
    medium.validate();
    if (!(r_ab() > 0.0)) throw GeometryError("coincident atoms (r_AB = 0)");
    if (!std::isfinite(r_ab())) throw GeometryError("non-finite geometry");
    switch (medium.kind) {
        case MediumKind::vacuum: break;
        case MediumKind::half_space:
            if (!(pos_a().x() > a) || !(pos_b().x() > a))
                throw GeometryError("atom inside the dielectric half-space x < a");
            break;
        case MediumKind::cylinder:
            if (!(a > 0.0)) throw GeometryError("fibre radius must be positive");
            if (!(r_a > a) || !(r_b > a)) throw GeometryError("atom inside the fibre (R <= a)");
            break;
    }
}

PairGeometry PairGeometry::lateral(double a, double r, double dz, QuantizationAxis axis) {
    PairGeometry g;
    g.a = a;
    g.r_a = r;
    g.r_b = r;
    g.dphi = 0.0;
    g.dz = dz;
    g.axis = axis;
    return g;
}

}  // namespace rydfibre
