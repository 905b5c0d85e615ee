#pragma once

#include <vector>

#include "imcalc/linear_forms.hpp"

namespace imcalc {

/// A linear k-vector field on the total space of a vector bundle,
///   pi = 1/k! pi^{b_1..b_k}_d u^d du_{b_1}^...^du_{b_k}
///      + 1/(k-1)! pi^{b_1..b_{k-1} j} du_{b_1}^...^du_{b_{k-1}}^dx_j
/// with du_b, dx_j the coordinate fields. The antisymmetric tables are kept
/// as wedge sections: fiber[d] has degree k and carries pi^B_d on e_B,
/// mixed[j] has degree k - 1 and carries pi^{B j}.
struct LinearMultivector {
  TotalChart bundle;
  std::size_t k = 0;
  std::vector<WedgeSection> fiber;
  std::vector<WedgeSection> mixed;
};

LinearMultivector zero_linear_multivector(const TotalChart& E, std::size_t k);

/// Shape test on a multivector of the total chart: every term has no dx
/// factor and a coefficient linear-homogeneous in u, or exactly one dx
/// factor and a u-independent coefficient.
bool is_linear_multivector(const TotalChart& E, const Multivector& P);
/// Reads off the tables; throws DomainError when the shape test fails or
/// the degree is 0.
LinearMultivector linear_multivector(const TotalChart& E, const Multivector& P);
Multivector to_multivector(const LinearMultivector& P);

/// A degree-(k-1) derivation of the exterior algebra of A, given on
/// generators: coord[j] = delta x^j (degree k-1), frame[a] = delta e_a
/// (degree k). On functions delta f = (d_j f) delta x^j.
struct Derivation {
  std::size_t k = 0;
  std::vector<WedgeSection> coord;
  std::vector<WedgeSection> frame;
};

/// delta x^j = pi^{B j} e_B, delta e_a = -pi^B_a e_B (B increasing).
Derivation derivation_from_linear(const LinearMultivector& P);
LinearMultivector linear_from_derivation(const TotalChart& E, const Derivation& D);

/// The degree-0 wedge section carrying f.
WedgeSection function_section(const LieAlgebroid& A, const Polynomial& f);

/// delta on an arbitrary wedge section, extended by
///   delta(u^v) = delta u ^ v + (-1)^{p(k-1)} u ^ delta v.
WedgeSection apply_derivation(const Derivation& D, const WedgeSection& u);

/// Gerstenhaber bracket on the exterior algebra of A: the algebroid bracket
/// on sections, [u, f] = rho(u) f, extended by
///   [U,V]   = -(-1)^{(p-1)(q-1)} [V,U],
///   [U,V^W] = [U,V]^W + (-1)^{(p-1)q} V^[U,W].
WedgeSection algebroid_schouten(const LieAlgebroid& A, const WedgeSection& U, const WedgeSection& V);

/// delta = [r, .] for r of degree k; a derivation of the bracket.
Derivation inner_derivation(const LieAlgebroid& A, const WedgeSection& r);

/// The generator conditions for delta to be a derivation of the bracket:
///   R1  [delta x^i, x^j] + (-1)^{k-1} [x^i, delta x^j] = 0             (i <= j)
///   R2  delta [x^i, e_b] = [delta x^i, e_b] + (-1)^{k-1} [x^i, delta e_b]
///   R3  delta [e_a, e_b] = [delta e_a, e_b] + [e_a, delta e_b]          (a < b)
/// Residuals are wedge sections labelled by frame names. R1 includes i = j
/// because it stands for the pairs of distinct copies in the prolongation.
CheckReport check_gerstenhaber_derivation(const LieAlgebroid& A, const Derivation& D);

/// <w_1^...^w_l, eta^1^...^eta^l> = det <eta^s, w_t>; covectors[s] holds the
/// components of eta^{s+1} in the dual frame.
Polynomial pairing(const WedgeSection& w, const std::vector<std::vector<Polynomial>>& covectors);

/// Values of pi-bar on the frame of cotangent_prolongation(A, k):
///   pi-bar(dxhat^{j,m}) = (-1)^{k-m} <delta x^j, xi^1^..(omit m)..^xi^k>,
///   pi-bar((e_a^L)^k)   = -<delta e_a, xi^1^...^xi^k>,
/// with xi^m the tautological dual coordinates. Each value is also computed
/// by evaluating pi on the covectors of the frame section at its base point
/// in A; a mismatch throws OracleDisagreement.
FiberFunctional multivector_bar_on_frame(const LieAlgebroid& A, const LinearMultivector& P);

struct DualVerdict {
  bool derivation = false;  // check_gerstenhaber_derivation passed
  bool morphism = false;    // pi-bar is a morphism on the cotangent prolongation
  CheckReport derivation_report;
  CheckReport morphism_report;
};

/// Both sides of the correspondence between linear multivectors whose pi-bar
/// is a morphism and derivations of the bracket. Unequal verdicts throw
/// OracleDisagreement on a verified algebroid.
DualVerdict oracle_equivalence_dual(const LieAlgebroid& A, const LinearMultivector& P);

}  // namespace imcalc
