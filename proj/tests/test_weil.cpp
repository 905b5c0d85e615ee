#include <gtest/gtest.h>

#include <random>

#include "imcalc/errors.hpp"
#include "imcalc/weil.hpp"
#include "support/candidates.hpp"

using namespace imcalc;
using namespace imcalc::testing;

namespace {

std::vector<DifferentialForm> frame_forms(std::mt19937& rng, const LieAlgebroid& A, std::size_t degree) {
  return random_forms(rng, A.base(), A.rank(), degree);
}

DifferentialForm linear_form(const LieAlgebroid& A, const BundleForms& f) { return compose(total_chart(A), f); }

bool same(const W1k& a, const W1k& b) {
  if (a.k != b.k || a.comp0.size() != b.comp0.size()) return false;
  for (std::size_t i = 0; i < a.comp0.size(); ++i)
    if (!(a.comp0[i] == b.comp0[i]) || !(a.comp1[i] == b.comp1[i])) return false;
  return true;
}

}  // namespace

TEST(Psi, Examples) {
  std::mt19937 rng(81);
  auto A = f3_koszul();
  auto E = total_chart(A);
  auto nu = frame_forms(rng, A, 2);
  auto w = psi(A, lambda_mu(E, nu));
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_EQ(w.comp0[a], nu[a]);
    EXPECT_TRUE(w.comp1[a].is_zero());
  }
  auto mu = frame_forms(rng, A, 1);
  auto v = psi(A, exterior_derivative(lambda_mu(E, mu)));
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_EQ(v.comp0[a], exterior_derivative(mu[a]));
    EXPECT_EQ(v.comp1[a], -mu[a]);
  }
  auto u = Polynomial::variable(E.chart, E.fiber(0));
  EXPECT_THROW(psi(A, (u * u) * dx(E.chart, 0)), DomainError);
}

TEST(Psi, Bijection) {
  std::mt19937 rng(82);
  for (int i = 0; i < 50; ++i) {
    auto A = random_algebroid(rng);
    const std::size_t k = 1 + i % 3;
    auto L = linear_form(A, random_im_forms(rng, A, k));
    auto w = psi(A, L);
    EXPECT_EQ(compose(total_chart(A), psi_inverse(w)), L);
    EXPECT_TRUE(same(psi(psi_inverse(w)), w));
    bool zero = true;
    for (std::size_t a = 0; a < w.comp0.size(); ++a) zero = zero && w.comp0[a].is_zero() && w.comp1[a].is_zero();
    EXPECT_EQ(zero, L.is_zero());
  }
}

// comp0 on f e_a from the compatibility rule agrees with d mu(u) + nu(u).
TEST(Psi, CompatibilityOnSections) {
  std::mt19937 rng(83);
  for (int i = 0; i < 20; ++i) {
    auto A = random_algebroid(rng);
    const std::size_t k = 1 + i % 3;
    auto f = random_im_forms(rng, A, k);
    auto w = psi(f);
    std::vector<Polynomial> comps;
    for (std::size_t a = 0; a < A.rank(); ++a) comps.push_back(random_polynomial(rng, A.base(), 2, 2));
    auto u = make_section(A, comps);
    DifferentialForm mu_u = zero_form(A.base(), k - 1), nu_u = zero_form(A.base(), k);
    for (std::size_t a = 0; a < A.rank(); ++a) {
      mu_u += comps[a] * f.mu[a];
      nu_u += comps[a] * f.nu[a];
    }
    EXPECT_EQ(w1k_comp0(w, u), exterior_derivative(mu_u) + nu_u);
    EXPECT_EQ(w1k_comp1(w, u), -mu_u);
  }
}

TEST(DvMu, Examples) {
  auto c = numbered_chart(2);
  auto z = dv_mu(1, {zero_form(c, 1), zero_form(c, 1)});
  EXPECT_EQ(z.k, 2u);
  for (std::size_t a = 0; a < 2; ++a) EXPECT_TRUE(z.comp0[a].is_zero() && z.comp1[a].is_zero());
  EXPECT_THROW(dv_mu(2, {dx(c, 0)}), DomainError);
  auto mu_w = bundle_map_element(1, {dx(c, 0)});
  EXPECT_EQ(mu_w.comp0[0], dx(c, 0));
  EXPECT_TRUE(mu_w.comp1[0].is_zero());
}

// psi(dL) = -d^v nu_W holds for every linear L.
TEST(DvMu, PsiIntertwinesDifferentials) {
  std::mt19937 rng(84);
  for (int i = 0; i < 30; ++i) {
    auto A = random_algebroid(rng);
    const std::size_t k = 1 + i % 3;
    auto f = random_im_forms(rng, A, k);
    auto L = linear_form(A, f);
    auto lhs = psi(A, exterior_derivative(L));
    auto rhs = dv_mu(k, f.nu);
    for (std::size_t a = 0; a < A.rank(); ++a) {
      EXPECT_EQ(lhs.comp0[a], -rhs.comp0[a]);
      EXPECT_EQ(lhs.comp1[a], -rhs.comp1[a]);
    }
    EXPECT_TRUE(check_psi_properties(A, L).passed("PSI_D"));
  }
}

TEST(Dh, Fixtures) {
  EXPECT_TRUE(dh_w1k(f3_koszul(), psi(f6_form().forms)).is_zero());
  auto f8 = f8_form();
  auto report = check_dh_closed(f8.algebroid, psi(f8.forms));
  EXPECT_FALSE(report.passed());
  EXPECT_FALSE(report.passed("DH1"));
  EXPECT_TRUE(report.passed("DH2"));

  std::mt19937 rng(85);
  auto T = f4_trivial();
  for (std::size_t k = 1; k <= 3; ++k) {
    W1k w{k, frame_forms(rng, T, k), frame_forms(rng, T, k - 1)};
    EXPECT_TRUE(dh_w1k(T, w).is_zero());
  }
}

TEST(Dh, ComponentsMatchIMConditions) {
  auto f8 = f8_form();
  auto dh = check_dh_closed(f8.algebroid, psi(f8.forms));
  auto im = check_im_form(f8);
  // (d^h w)_1 is IM2 verbatim
  ASSERT_EQ(dh.with_tag("DH1").size(), im.with_tag("IM2").size());
  for (std::size_t i = 0; i < im.with_tag("IM2").size(); ++i) {
    EXPECT_EQ(dh.with_tag("DH1")[i]->witness, im.with_tag("IM2")[i]->witness);
    EXPECT_EQ(render_residual(dh.with_tag("DH1")[i]->residual), render_residual(im.with_tag("IM2")[i]->residual));
  }
}

TEST(PsiProperties, Fixtures) {
  auto f6 = f6_form();
  auto r6 = check_psi_properties(f6.algebroid, linear_form(f6.algebroid, f6.forms));
  EXPECT_TRUE(r6.passed());
  EXPECT_EQ(r6.notes, (std::vector<std::string>{"IM conditions hold: yes", "d^h psi(L) = 0: yes"}));
  auto f8 = f8_form();
  auto r8 = check_psi_properties(f8.algebroid, linear_form(f8.algebroid, f8.forms));
  EXPECT_TRUE(r8.passed());
  EXPECT_EQ(r8.notes, (std::vector<std::string>{"IM conditions hold: no", "d^h psi(L) = 0: no"}));
}

// check_im_form, the morphism oracle and d^h psi(L) = 0 agree.
TEST(TripleAgreement, FixturesAndRandomForms) {
  for (const auto& im : {f4_form(), f6_form(), f7_form(), f8_form()}) {
    auto v = oracle_equivalence(im);
    const bool closed = check_dh_closed(im.algebroid, psi(im.forms)).passed();
    EXPECT_EQ(v.im, v.morphism);
    EXPECT_EQ(v.im, closed);
  }
  std::mt19937 rng(86);
  int passes = 0, failures = 0;
  for (int i = 0; i < 50; ++i) {
    auto A = random_algebroid(rng);
    const std::size_t k = 1 + i % 3;
    IMForm im(A, random_im_forms(rng, A, k));
    auto v = oracle_equivalence(im);
    const bool closed = check_dh_closed(A, psi(A, linear_form(A, im.forms))).passed();
    ASSERT_EQ(v.im, v.morphism);
    ASSERT_EQ(v.im, closed);
    (closed ? passes : failures)++;
  }
  EXPECT_GT(passes, 5);
  EXPECT_GT(failures, 5);
}
