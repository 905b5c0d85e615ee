#pragma once

#include <cstdint>
#include <vector>

#include "imcalc/im_forms.hpp"

namespace imcalc {

/// Spanning sections (X_a, alpha_a) of a candidate L in TM + T*M, with
/// nu_L(X_a, alpha_a) = nu_a. The pairing is <(X,a),(Y,b)> = b(X) + a(Y).
struct DiracCandidate {
  ChartPtr base;
  std::vector<VectorField> X;
  std::vector<DifferentialForm> alpha;  // 1-forms
  std::vector<DifferentialForm> nu;     // 2-forms

  std::size_t rank() const noexcept { return X.size(); }
};

/// Generators (rho(e_a), mu(e_a)) with nu_L = nu; k must be 2.
DiracCandidate dirac_from_im(const IMForm& im);
/// Graph of a bivector: generators (i_{dx^a} pi, dx^a). `nu` defaults to 0.
DiracCandidate dirac_graph(const Multivector& pi, std::vector<DifferentialForm> nu = {});

/// <gen_a, gen_b> = 0 as polynomials, for a <= b (tag ISOTROPY).
CheckReport check_isotropic(const DiracCandidate& D);

struct PointVerdict {
  std::vector<Rational> point;
  std::size_t rank = 0;
  bool isotropic = false;
  bool lagrangian = false;  // isotropic with rank = dim M, so L = L-perp there
};

struct LagrangianReport {
  std::vector<PointVerdict> points;
  /// ISOTROPY violations, and LAGRANGIAN with the 1-based sample index for
  /// each point that is not lagrangian.
  CheckReport report;
};

/// The integer grid {-1,0,1}^n followed by `random_count` random rationals.
std::vector<std::vector<Rational>> default_sample_points(std::size_t n, std::uint64_t seed = 0,
                                                         std::size_t random_count = 10);

/// Rank and lagrangian verdicts at each sample point, by exact linear algebra.
/// Verdicts are per point; nothing is claimed between samples.
LagrangianReport check_lagrangian(const DiracCandidate& D, const std::vector<std::vector<Rational>>& points);

struct DiracPair {
  VectorField X;
  DifferentialForm alpha;
};

/// ([X,Y], L_X beta - i_Y d alpha - i_Y nu_X_alpha), nu_X_alpha = nu_L(X, alpha).
DiracPair nubrk(const DiracPair& a, const DiracPair& b, const DifferentialForm& nu_X_alpha);

/// The section sum_a c[a] (X_a, alpha_a) and its nu_L value.
DiracPair span_element(const DiracCandidate& D, const std::vector<Polynomial>& c);
DifferentialForm nu_of(const DiracCandidate& D, const std::vector<Polynomial>& c);
/// Bracket of two sections of the span given by generator coefficients.
DiracPair bracket_nubrk(const DiracCandidate& D, const std::vector<Polynomial>& c1,
                        const std::vector<Polynomial>& c2);

struct ClosureReport {
  /// CLOSURE violations with witness (a, b) for generator brackets outside
  /// the span. Reducing to generator pairs uses isotropy.
  CheckReport report;
  /// True when membership was decided symbolically: some r x r minor of the
  /// generator matrix has a non-zero constant determinant, so the bracket's
  /// coefficients are forced and the residual is exact. Otherwise membership
  /// was only tested at the sample points.
  bool certified = false;
};

ClosureReport check_closure(const DiracCandidate& D, const std::vector<std::vector<Rational>>& points);

}  // namespace imcalc
