#include <gtest/gtest.h>

#include <random>

#include "imcalc/errors.hpp"
#include "imcalc/linear_forms.hpp"
#include "imcalc/prolongation.hpp"
#include "support/fixtures.hpp"

using namespace imcalc;
using namespace imcalc::testing;

namespace {

Polynomial P(const ChartPtr& c, const char* text) { return parse_polynomial(text, c); }

std::vector<DifferentialForm> random_forms(std::mt19937& rng, const ChartPtr& base, std::size_t count,
                                           std::size_t degree) {
  std::vector<DifferentialForm> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_alternating<FormTag>(rng, base, base->dim(), degree, 2));
  return out;
}

BundleForms random_pair(std::mt19937& rng, const ChartPtr& base, std::size_t rank, std::size_t k) {
  return {k, random_forms(rng, base, rank, k - 1), random_forms(rng, base, rank, k)};
}

void expect_same(const BundleForms& a, const BundleForms& b) {
  ASSERT_EQ(a.k, b.k);
  ASSERT_EQ(a.mu.size(), b.mu.size());
  for (std::size_t d = 0; d < a.mu.size(); ++d) {
    EXPECT_EQ(a.mu[d], b.mu[d]);
    EXPECT_EQ(a.nu[d], b.nu[d]);
  }
}

// Chart (x, p) of T*M and the canonical forms on it.
ChartPtr cotangent_chart(const ChartPtr& base) {
  std::vector<Coordinate> coords = base->coordinates();
  for (const auto& c : base->coordinates()) coords.push_back({"p_" + c.name, CoordinateRole::fiber, 0});
  return Chart::make("TstarM", coords);
}

DifferentialForm theta_can(const ChartPtr& Tstar, std::size_t n) {
  DifferentialForm out = zero_form(Tstar, 1);
  for (std::size_t i = 0; i < n; ++i) out += Polynomial::variable(Tstar, n + i) * dx(Tstar, i);
  return out;
}

// The map (x, u) -> (x, p_i = sum_d u^d mu(e_d)_i) for 1-forms mu.
std::vector<Polynomial> bundle_map(const TotalChart& E, const std::vector<DifferentialForm>& mu, const Rational& s) {
  const std::size_t n = E.base->dim();
  std::vector<Polynomial> map;
  for (std::size_t i = 0; i < n; ++i) map.push_back(Polynomial::variable(E.chart, i));
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial p(E.chart);
    for (std::size_t d = 0; d < mu.size(); ++d) {
      p += Polynomial::variable(E.chart, E.fiber(d)) * mu[d].coefficient({static_cast<std::uint16_t>(i)}).embed(E.chart);
    }
    map.push_back(s * p);
  }
  return map;
}

}  // namespace

TEST(LambdaMu, Examples) {
  auto c = numbered_chart(2);
  auto E = total_chart(c, {"e1"});
  EXPECT_EQ(lambda_mu(E, {dx(c, 0)}), P(E.chart, "u_e1") * dx(E.chart, 0));
  EXPECT_TRUE(lambda_mu(E, {zero_form(c, 1)}).is_zero());
  EXPECT_THROW(lambda_mu(E, {dx(c, 0), dx(c, 1)}), DomainError);
}

TEST(LambdaMu, OneFormIsPullbackOfTautologicalForm) {
  std::mt19937 rng(31);
  for (int i = 0; i < 20; ++i) {
    auto c = numbered_chart(1 + i % 3);
    auto E = total_chart(c, frame_names(1 + i % 2));
    auto mu = random_forms(rng, c, E.rank(), 1);
    auto Tstar = cotangent_chart(c);
    EXPECT_EQ(lambda_mu(E, mu), pullback(theta_can(Tstar, c->dim()), E.chart, bundle_map(E, mu, 1)));
  }
}

TEST(IsLinear, Shapes) {
  auto c = numbered_chart(2);
  auto E = total_chart(c, {"e1", "e2"});
  const auto& T = E.chart;
  auto dudx = wedge(dx(T, 0), dx(T, "u_e1"));
  EXPECT_TRUE(is_linear(E, P(T, "u_e1") * wedge(dx(T, 0), dx(T, 1)) + dudx));
  EXPECT_FALSE(is_linear(E, P(T, "u_e1^2") * wedge(dx(T, 0), dx(T, 1))));
  EXPECT_FALSE(is_linear(E, wedge(dx(T, "u_e1"), dx(T, "u_e2"))));
  EXPECT_FALSE(is_linear(E, P(T, "x1") * wedge(dx(T, 0), dx(T, 1))));
  EXPECT_FALSE(is_linear(E, P(T, "u_e2") * dudx));
  EXPECT_TRUE(is_linear(E, zero_form(T, 2)));
}

TEST(Decompose, PureParts) {
  std::mt19937 rng(32);
  auto c = numbered_chart(3);
  auto E = total_chart(c, frame_names(2));
  for (std::size_t k = 1; k <= 3; ++k) {
    auto mu = random_forms(rng, c, 2, k - 1);
    auto nu = random_forms(rng, c, 2, k);
    auto zmu = zero_forms(c, 2, k - 1);
    auto znu = zero_forms(c, 2, k);
    expect_same(decompose(E, exterior_derivative(lambda_mu(E, mu, k - 1))), {k, mu, znu});
    expect_same(decompose(E, lambda_mu(E, nu, k)), {k, zmu, nu});
  }
}

TEST(Decompose, RoundTripAndClosureUnderD) {
  std::mt19937 rng(33);
  for (int i = 0; i < 100; ++i) {
    auto c = numbered_chart(1 + i % 3);
    auto E = total_chart(c, frame_names(1 + i % 3));
    const std::size_t k = 1 + i % 3;
    auto pair = random_pair(rng, c, E.rank(), k);
    auto L = compose(E, pair);
    ASSERT_TRUE(is_linear(E, L));
    expect_same(decompose(E, L), pair);
    EXPECT_TRUE(is_linear(E, exterior_derivative(L)));
  }
}

TEST(Decompose, RejectsNonLinear) {
  auto c = numbered_chart(2);
  auto E = total_chart(c, {"e1"});
  EXPECT_THROW(decompose(E, P(E.chart, "u_e1^2") * dx(E.chart, 0)), DomainError);
  EXPECT_THROW(decompose(E, function_form(P(E.chart, "u_e1"))), DomainError);
}

// A closed linear 2-form has nu = 0 and is the pullback of dx^i ^ dp_i along
// lambda^t = -mu.
TEST(Decompose, ClosedTwoFormIsPullbackOfCanonicalSymplecticForm) {
  std::mt19937 rng(34);
  for (int i = 0; i < 20; ++i) {
    auto c = numbered_chart(2 + i % 2);
    auto E = total_chart(c, frame_names(1 + i % 3));
    auto L = exterior_derivative(compose(E, random_pair(rng, c, E.rank(), 1)));
    auto pair = decompose(E, L);
    for (const auto& nu : pair.nu) EXPECT_TRUE(nu.is_zero());
    auto Tstar = cotangent_chart(c);
    auto omega_can = -exterior_derivative(theta_can(Tstar, c->dim()));
    EXPECT_EQ(L, pullback(omega_can, E.chart, bundle_map(E, pair.mu, -1)));
  }
}

TEST(Tau, Examples) {
  auto c1 = numbered_chart(1);
  auto T1 = tangent_chart(c1);
  EXPECT_EQ(tau(dx(c1, 0)), function_form(P(T1.chart, "xdot_x1")));
  EXPECT_TRUE(tau(zero_form(c1, 1)).is_zero());
  EXPECT_EQ(tau(zero_form(c1, 2)).degree(), 1u);
  EXPECT_THROW(tau(function_form(P(c1, "x1"))), DomainError);
}

TEST(Tau, TwoFormIsPullbackAlongSharp) {
  std::mt19937 rng(35);
  for (int i = 0; i < 20; ++i) {
    auto c = numbered_chart(2 + i % 2);
    const std::size_t n = c->dim();
    auto omega = random_alternating<FormTag>(rng, c, n, 2, 2);
    auto T = tangent_chart(c);
    // omega-sharp(xdot)_i = xdot^j omega_{ji}
    std::vector<Polynomial> map;
    for (std::size_t i2 = 0; i2 < n; ++i2) map.push_back(Polynomial::variable(T.chart, i2));
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      Polynomial p(T.chart);
      for (std::size_t j = 0; j < n; ++j) {
        auto w = omega.coefficient({static_cast<std::uint16_t>(j), static_cast<std::uint16_t>(i2)});
        p += Polynomial::variable(T.chart, T.fiber(j)) * w.embed(T.chart);
      }
      map.push_back(p);
    }
    EXPECT_EQ(tau(omega), pullback(theta_can(cotangent_chart(c), n), T.chart, map));
  }
}

TEST(TangentLift, Examples) {
  auto c1 = numbered_chart(1);
  auto T1 = tangent_chart(c1).chart;
  EXPECT_EQ(tangent_lift(dx(c1, 0)), dx(T1, "xdot_x1"));
  auto c2 = numbered_chart(2);
  auto T2 = tangent_chart(c2).chart;
  EXPECT_EQ(tangent_lift(P(c2, "x1") * dx(c2, 1)),
            P(T2, "xdot_x1") * dx(T2, "x2") + P(T2, "x1") * dx(T2, "xdot_x2"));
  EXPECT_TRUE(tangent_lift(zero_form(c2, 2)).is_zero());
  EXPECT_EQ(tangent_lift(function_form(P(c2, "x1^2"))), function_form(P(T2, "2*x1*xdot_x1")));
}

TEST(TangentLift, LinearAndCommutesWithD) {
  std::mt19937 rng(36);
  for (int i = 0; i < 100; ++i) {
    auto c = numbered_chart(1 + i % 3);
    const std::size_t k = i % (c->dim() + 1);
    auto alpha = random_alternating<FormTag>(rng, c, c->dim(), k, 3);
    auto T = tangent_chart(c);
    EXPECT_TRUE(is_linear(T, tangent_lift(alpha)));
    EXPECT_EQ(tangent_lift(exterior_derivative(alpha)), exterior_derivative(tangent_lift(alpha)));
  }
}

TEST(TangentLift, SampledInvolutionCheck) {
  std::mt19937 rng(37);
  for (int i = 0; i < 30; ++i) {
    auto c = numbered_chart(1 + i % 3);
    const std::size_t k = i % (c->dim() + 1);
    auto alpha = random_alternating<FormTag>(rng, c, c->dim(), k, 3);
    auto report = check_tangent_lift_sampled(alpha, 1000 + i);
    EXPECT_TRUE(report.passed());
    ASSERT_EQ(report.notes.size(), 1u);
  }
}

TEST(TangentLift, SampledCheckRejectsWrongLift) {
  auto c = numbered_chart(2);
  auto T = tangent_chart(c).chart;
  auto alpha = P(c, "x1") * dx(c, 1);
  // the d tau term alone misses tau(d alpha)
  auto report = check_tangent_lift_sampled(alpha, exterior_derivative(tau(alpha)), 7);
  ASSERT_FALSE(report.passed());
  EXPECT_EQ(report.violations.front().tag, "ALPHA_T");
  EXPECT_FALSE(check_tangent_lift_sampled(dx(c, 0), dx(T, "xdot_x2"), 8).passed());
}

TEST(LambdaBar, KOneExamples) {
  auto A = f2_tangent(2);
  auto c = A.base();
  auto P1 = tangent_prolongation(A, 1);
  std::mt19937 rng(38);
  auto nu = random_forms(rng, c, 2, 1);
  auto values = lambda_bar_on_frame(A, BundleForms{1, zero_forms(c, 2, 0), nu});
  auto Pc = P1.base();
  for (std::size_t a = 0; a < 2; ++a) {
    EXPECT_TRUE(values.at(a).is_zero());
    Polynomial expected(Pc);
    for (std::size_t j = 0; j < 2; ++j) {
      expected += Polynomial::variable(Pc, tangent_copy_name(1, c->coordinate(j).name)) *
                  nu[a].coefficient({static_cast<std::uint16_t>(j)}).embed(Pc);
    }
    EXPECT_EQ(values.at(2 + a), expected);
  }
  auto zeros = lambda_bar_on_frame(A, BundleForms{2, zero_forms(c, 2, 1), zero_forms(c, 2, 2)});
  for (const auto& v : zeros.values) EXPECT_TRUE(v.is_zero());
}

TEST(LambdaBar, HandComputedTwoForm) {
  auto A = f2_tangent(2);
  auto c = A.base();
  BundleForms forms{2, {P(c, "x2") * dx(c, 0), zero_form(c, 1)}, zero_forms(c, 2, 2)};
  auto values = lambda_bar_on_frame(A, forms);
  auto Pc = tangent_prolongation(A, 2).base();
  EXPECT_EQ(values.at(A.rank() * 0 + 0), P(Pc, "x2*xdot2_x1"));
  EXPECT_EQ(values.at(A.rank() * 1 + 0), P(Pc, "-x2*xdot1_x1"));
  EXPECT_EQ(values.at(A.rank() * 2 + 0), P(Pc, "xdot1_x2*xdot2_x1 - xdot1_x1*xdot2_x2"));
  EXPECT_TRUE(values.at(A.rank() * 2 + 1).is_zero());
}

TEST(LambdaBar, ExactFormRoutesAgree) {
  auto A = f2_tangent(2);
  auto c = A.base();
  BundleForms f7{2, {P(c, "-x1") * dx(c, 1), P(c, "x1") * dx(c, 0)}, zero_forms(c, 2, 2)};
  auto E = total_chart(A);
  auto L = compose(E, f7);
  auto values = lambda_bar_on_frame(A, L);
  EXPECT_EQ(values.values.size(), 3 * A.rank());
  auto direct = lambda_bar_on_frame(A, f7);
  EXPECT_EQ(values.values, direct.values);
}

TEST(LambdaBar, RoutesAgreeOnRandomForms) {
  std::mt19937 rng(39);
  int done = 0;
  for (int i = 0; done < 50; ++i) {
    auto A = random_algebroid(rng);
    if (A.rank() == 0) continue;
    const std::size_t k = 1 + i % 3;
    auto forms = random_pair(rng, A.base(), A.rank(), k);
    EXPECT_NO_THROW(lambda_bar_on_frame(A, compose(total_chart(A), forms)));
    ++done;
  }
}

TEST(LambdaBar, FixturesRoutesAgree) {
  std::mt19937 rng(40);
  for (const auto& A : {f1_so3(), f2_tangent(), f3_koszul(), f4_trivial(), f8_perturbed()}) {
    for (std::size_t k = 1; k <= 3; ++k) {
      EXPECT_NO_THROW(lambda_bar_on_frame(A, random_pair(rng, A.base(), A.rank(), k)));
    }
  }
}
