#pragma once

#include <vector>

#include "imcalc/im_forms.hpp"

namespace imcalc {

/// An element of W^{1,k}(A) through its values on the frame: comp0[a] is a
/// k-form, comp1[a] a (k-1)-form. On other sections
///   comp0(f u) = f comp0(u) - df ^ comp1(u),  comp1(f u) = f comp1(u).
struct W1k {
  std::size_t k = 0;
  std::vector<DifferentialForm> comp0;
  std::vector<DifferentialForm> comp1;
};

/// comp0 and comp1 on an arbitrary section.
DifferentialForm w1k_comp0(const W1k& w, const Section& u);
DifferentialForm w1k_comp1(const W1k& w, const Section& u);

/// The three components of an element of W^{2,k}(A) on frame pairs, as full
/// r x r tables: comp0 (k-forms, antisymmetric), comp1[a][b] = c_1(e_a)(e_b)
/// ((k-1)-forms) and comp2 ((k-1)-forms, symmetric). comp2 is recovered
/// from its diagonal by polarization.
struct W2kComponents {
  std::vector<std::vector<DifferentialForm>> comp0;
  std::vector<std::vector<DifferentialForm>> comp1;
  std::vector<std::vector<DifferentialForm>> comp2;

  bool is_zero() const;
};

/// psi(d Lambda_mu + Lambda_nu) = -d^v mu_W + nu_W, i.e.
/// comp0 = d mu + nu, comp1 = -mu.
W1k psi(const BundleForms& forms);
/// psi of a linear form on the total chart of A (DomainError if not linear).
W1k psi(const LieAlgebroid& A, const DifferentialForm& L);
/// mu = -comp1, nu = comp0 - d mu.
BundleForms psi_inverse(const W1k& w);

/// mu_W = (mu, 0) for a bundle map mu with values of degree k.
W1k bundle_map_element(std::size_t k, const std::vector<DifferentialForm>& mu);
/// d^v mu_W = (-d mu, mu), an element of degree k + 1.
W1k dv_mu(std::size_t k, const std::vector<DifferentialForm>& mu);

/// d^h on W^{1,k}:
///   (d^h w)_0(u,v) = -w_0([u,v]) + L_{rho u} w_0(v) - L_{rho v} w_0(u)
///   (d^h w)_1(u)(v) = L_{rho u} w_1(v) - w_1([u,v]) + i_{rho v} w_0(u)
///   (d^h w)_2(u)   = -i_{rho u} w_1(u)
W2kComponents dh_w1k(const LieAlgebroid& A, const W1k& w);

/// Non-zero components of d^h w (tags DH0 on a < b, DH1 on ordered pairs,
/// DH2 on a <= b).
CheckReport check_dh_closed(const LieAlgebroid& A, const W1k& w);

/// For a linear form L of degree k:
///   PSI_D   psi(dL) = -d^v nu_W, per frame section (residual in the witness),
///   PSI_IM  check_im_form on the decomposition agrees with d^h psi(L) = 0.
/// The two verdicts of the second comparison are recorded in the notes.
CheckReport check_psi_properties(const LieAlgebroid& A, const DifferentialForm& L);

}  // namespace imcalc
