#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imcalc/algebroid.hpp"

namespace imcalc {

/// Chart (x^1..x^n, u^1..u^r) on the total space of a vector bundle with a
/// local frame. Fibre coordinates sit after the base coordinates, in frame
/// order.
struct TotalChart {
  ChartPtr chart;
  ChartPtr base;
  std::vector<std::string> frame;

  std::size_t rank() const noexcept { return frame.size(); }
  /// Slot of the fibre coordinate dual to frame element d.
  std::size_t fiber(std::size_t d) const { return base->dim() + d; }
  bool is_fiber(std::size_t slot) const { return slot >= base->dim(); }
};

/// Fibre coordinates are named "u_<frame name>".
TotalChart total_chart(const ChartPtr& base, const std::vector<std::string>& frame);
TotalChart total_chart(const LieAlgebroid& A);
/// TM with fibre coordinates "xdot_<x>"; the frame is the coordinate frame.
TotalChart tangent_chart(const ChartPtr& base);

/// The pair (mu, nu) of a linear k-form, given on the frame: mu[a] is a
/// (k-1)-form and nu[a] a k-form on the base chart.
struct BundleForms {
  std::size_t k = 0;
  std::vector<DifferentialForm> mu;
  std::vector<DifferentialForm> nu;
};

/// Lambda_mu = sum_d u^d mu(e_d), a form on the total chart with no du
/// components. `degree` is only consulted when `forms` is empty.
DifferentialForm lambda_mu(const TotalChart& E, const std::vector<DifferentialForm>& forms, std::size_t degree = 0);

/// Shape test: every term is linear-homogeneous in u without du factors, or
/// u-independent with exactly one du factor.
bool is_linear(const TotalChart& E, const DifferentialForm& L);

/// The unique (mu, nu) with L = d Lambda_mu + Lambda_nu. Throws DomainError
/// for non-linear L or degree 0.
BundleForms decompose(const TotalChart& E, const DifferentialForm& L);
/// d Lambda_mu + Lambda_nu.
DifferentialForm compose(const TotalChart& E, const BundleForms& forms);

/// tau(beta) = i_xdot beta on the tangent chart of beta's chart, for
/// deg beta >= 1.
DifferentialForm tau(const DifferentialForm& beta);
/// alpha_T = d tau(alpha) + tau(d alpha); tau of a function is zero.
DifferentialForm tangent_lift(const DifferentialForm& alpha);

/// Compares alpha_T with the derivative of alpha-bar through the canonical
/// involution at `points` random integer points of the iterated tangent
/// chart (tag ALPHA_T, witness = 1-based sample number).
CheckReport check_tangent_lift_sampled(const DifferentialForm& alpha, std::uint64_t seed, unsigned points = 20);
/// Same check against an arbitrary candidate for alpha_T.
CheckReport check_tangent_lift_sampled(const DifferentialForm& alpha, const DifferentialForm& candidate,
                                       std::uint64_t seed, unsigned points = 20);

/// Values of Lambda-bar on the frame of tangent_prolongation(A, k), k = deg L:
///   Lambda-bar(ehat_{a,n}) = (-1)^{n-1} I_{k,n+1} I_{n-1,1} mu(e_a),
///   Lambda-bar((Te_a)^k)   = I_{k,1} (d mu(e_a) + nu(e_a)),
/// with I built from the tautological fields xdot_l. Each value is also
/// computed by contracting L with the coordinate tangent vectors of the frame
/// sections; a mismatch throws OracleDisagreement.
FiberFunctional lambda_bar_on_frame(const LieAlgebroid& A, const DifferentialForm& L);
FiberFunctional lambda_bar_on_frame(const LieAlgebroid& A, const BundleForms& forms);

}  // namespace imcalc
