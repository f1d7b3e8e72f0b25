#pragma once

#include <numbers>

// Conversion constants. Energies are GHz everywhere except inside the radial
// solver, which works in atomic units. Lengths are nm at the API boundary.
namespace rydfibre::units {

inline constexpr double pi = std::numbers::pi;

/// Hartree energy in GHz (CODATA 2018).
inline constexpr double hartree_ghz = 6579683.920502;

/// Bohr radius in nm (CODATA 2018).
inline constexpr double bohr_nm = 0.0529177210903;

inline constexpr double nm_per_um = 1000.0;

/// 1/epsilon_0 in atomic units (4 pi epsilon_0 = 1).
inline constexpr double inv_epsilon0_au = 4.0 * pi;

inline constexpr double ghz_to_hartree(double e) { return e / hartree_ghz; }
inline constexpr double hartree_to_ghz(double e) { return e * hartree_ghz; }

/// Converts a multipole coupling (e a0)^p (e a0)^q contracted with a Green
/// derivative tensor in nm^-(p+q+1) to GHz, including the 1/epsilon_0 factor.
/// The Green derivative order is `order` (2 for dipole-dipole, 3 for
/// dipole-quadrupole, 4 for quadrupole-quadrupole).
inline double coupling_to_ghz(int order) {
    double a = 1.0;
    for (int i = 0; i < order + 1; ++i) a *= bohr_nm;
    return inv_epsilon0_au * a * hartree_ghz;
}

}  // namespace rydfibre::units
