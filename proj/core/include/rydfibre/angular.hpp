#pragma once

// Angular-momentum coupling coefficients. All angular momenta are passed as
// doubled integers (two_j = 2j) so half-integers are exact.
namespace rydfibre::angular {

/// Wigner 3j symbol (j1 j2 j3; m1 m2 m3), Racah formula.
double wigner_3j(int two_j1, int two_j2, int two_j3, int two_m1, int two_m2, int two_m3);

/// Wigner 6j symbol {j1 j2 j3; j4 j5 j6}, Racah formula.
double wigner_6j(int two_j1, int two_j2, int two_j3, int two_j4, int two_j5, int two_j6);

/// Clebsch-Gordan coefficient <j1 m1 j2 m2 | J M>.
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M);

/// Reduced matrix element <l' || C^k || l> of the Racah-normalised spherical harmonic.
double reduced_ck_orbital(int l_prime, int k, int l);

/// <l' s j' || C^k || l s j> for s = 1/2, C^k acting on the orbital part only.
double reduced_ck_fine(int l_prime, int two_j_prime, int k, int l, int two_j);

/// <l' j' m' | C^k_q | l j m> via Wigner-Eckart (s = 1/2).
double ck_matrix_element(int l_prime, int two_j_prime, int two_m_prime,
                         int k, int q,
                         int l, int two_j, int two_m);

}  // namespace rydfibre::angular
