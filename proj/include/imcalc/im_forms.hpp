#pragma once

#include "imcalc/linear_forms.hpp"

namespace imcalc {

/// A candidate IM k-form (mu, nu) on an algebroid.
struct IMForm {
  LieAlgebroid algebroid;
  BundleForms forms;

  /// Validates ranks and degrees and moves the forms onto the base chart.
  IMForm(LieAlgebroid A, BundleForms forms);
};

/// Checks on frame pairs (e_a, e_b):
///   IM1  i_{rho(e_a)} mu(e_b) + i_{rho(e_b)} mu(e_a) = 0                           (a <= b)
///   IM2  mu([e_a,e_b]) - L_{rho(e_a)} mu(e_b) + i_{rho(e_b)} d mu(e_a) + i_{rho(e_b)} nu(e_a) = 0
///   IM3  nu([e_a,e_b]) - L_{rho(e_a)} nu(e_b) + i_{rho(e_b)} d nu(e_a) = 0
/// IM2 and IM3 run over all ordered pairs. Reducing them to frame pairs is
/// only valid once IM1 holds; otherwise their violations carry the note
/// "frame-reduction not certified". When all three pass, the consequences
///   NU1  i_{rho(u)} nu(v) + i_{rho(v)} nu(u) = 0
///   NU2  sum over cyclic (u,v,w) of
///          i_{rho(w)}(L_{rho(v)} nu(u) - L_{rho(u)} nu(v))
///          - L_{rho(w)} i_{rho(v)} nu(u) + i_{rho(w)} nu([u,v])
///        plus 3 d i_{rho(w)} i_{rho(v)} nu(u), equal to 0
/// are checked on the frame as well. For k = 1 the middle terms of NU2 sum to
/// zero on their own and the first line alone is checked too. On a verified
/// algebroid a failure throws OracleDisagreement, otherwise it is reported.
CheckReport check_im_form(const IMForm& im);

/// mu(e_a) = -i_{rho(e_a)} eta, nu(e_a) = -i_{rho(e_a)} d eta; deg eta >= 1.
IMForm im_from_form(const LieAlgebroid& A, const DifferentialForm& eta);

/// nu(e_a) = -i_{rho(e_a)} phi with the given mu, k = deg phi - 1. Throws
/// PreconditionError unless i_{rho(e_a)} d phi = 0 for every a.
IMForm im_relative(const LieAlgebroid& A, std::vector<DifferentialForm> mu, const DifferentialForm& phi);

struct OracleVerdict {
  bool im = false;        // check_im_form passed
  bool morphism = false;  // Lambda-bar is a morphism on the tangent prolongation
  CheckReport im_report;
  CheckReport morphism_report;
};

/// Runs both sides of the correspondence between IM forms and morphisms
/// Lambda-bar from the k-th tangent prolongation to the line. On a verified
/// algebroid unequal verdicts throw OracleDisagreement; on an unchecked one
/// they are returned as computed.
OracleVerdict oracle_equivalence(const IMForm& im);

}  // namespace imcalc
