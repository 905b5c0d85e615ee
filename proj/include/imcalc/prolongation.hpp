#pragma once

#include "imcalc/algebroid.hpp"

namespace imcalc {

/// Name of the n-th tangent copy of base coordinate `x` ("xdot2_x1").
std::string tangent_copy_name(unsigned n, const std::string& x);
/// Name of the n-th dual copy of fibre coordinate `e` ("xi2_e1").
std::string dual_copy_name(unsigned n, const std::string& e);

/// The algebroid of k-fold direct sums of TA over k-fold direct sums of TM.
///
/// Base chart: x^1..x^n, then xdot_1^1..xdot_1^n, ..., xdot_k^n.
/// Frame: core sections ehat_{a,m} ordered by (m, a) at index (m-1)r + a,
/// then linear sections (Te_a)^k at index kr + a. Names "ehat<m>_<e>" and
/// "T<e>".
///   rho(ehat_{a,m}) = rho_a^j d/dxdot_m^j
///   rho(Te_a)       = rho_a^j d/dx^j + xdot_m^i (d_i rho_a^j) d/dxdot_m^j
///   [ehat, ehat] = 0,  [Te_a, ehat_{b,m}] = C_ab^d ehat_{d,m},
///   [Te_a, Te_b] = C_ab^d Te_d + xdot_m^i (d_i C_ab^d) ehat_{d,m}.
/// The result is checked when A is, unchecked otherwise. k >= 1.
LieAlgebroid tangent_prolongation(const LieAlgebroid& A, unsigned k);

/// The algebroid of k-fold direct sums of T*A over k-fold direct sums of A*.
///
/// Base chart: x^1..x^n, then xi^1_1..xi^1_r, ..., xi^k_r.
/// Frame: core sections dxhat^{i,m} ordered by (m, i) at index (m-1)n + i,
/// then linear sections (e_a^L)^k at index kn + a. Names "dxhat<m>_<x>" and
/// "L<e>".
///   rho(dxhat^{i,m}) = rho_d^i d/dxi^m_d
///   rho(e_a^L)       = rho_a^j d/dx^j + C_ab^c xi^m_c d/dxi^m_b
///   [dxhat, dxhat] = 0,  [e_a^L, dxhat^{j,m}] = (d_i rho_a^j) dxhat^{i,m},
///   [e_a^L, e_b^L] = C_ab^d e_d^L - (d_i C_ab^c) xi^m_c dxhat^{i,m}.
LieAlgebroid cotangent_prolongation(const LieAlgebroid& A, unsigned k);

}  // namespace imcalc
