#include "imcalc/linear_forms.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>

#include "imcalc/errors.hpp"
#include "imcalc/prolongation.hpp"
#include "exact_linalg.hpp"

namespace imcalc {

namespace {

TotalChart make_total(const ChartPtr& base, const std::vector<std::string>& frame, const std::string& prefix,
                      const std::string& suffix) {
  std::vector<Coordinate> coords = base->coordinates();
  for (const auto& e : frame) coords.push_back({prefix + e, CoordinateRole::fiber, 0});
  return {Chart::make(base->name() + suffix, std::move(coords)), base, frame};
}

// u-degree of a monomial.
int fiber_degree(const TotalChart& E, const Polynomial::Exponent& e) {
  int d = 0;
  for (std::size_t i = E.base->dim(); i < e.size(); ++i) d += e[i];
  return d;
}

std::size_t count_fiber_slots(const TotalChart& E, const IndexTuple& idx) {
  std::size_t n = 0;
  for (auto i : idx) n += E.is_fiber(i) ? 1 : 0;
  return n;
}

DifferentialForm on_base(const TotalChart& E, const DifferentialForm& a) { return transfer(a, E.base); }

DifferentialForm checked_on(const ChartPtr& chart, const DifferentialForm& a, std::size_t degree, const char* what) {
  if (a.degree() != degree && !a.is_zero()) {
    throw DomainError(std::string(what) + " has degree " + std::to_string(a.degree()) + ", expected " +
                      std::to_string(degree));
  }
  DifferentialForm out = transfer(a, chart);
  if (out.is_zero()) out = zero_form(chart, degree);
  return out;
}

int sign_pow(std::size_t n) { return n % 2 == 0 ? 1 : -1; }

std::vector<VectorField> tautological_fields(const ChartPtr& chart, const ChartPtr& base, unsigned k) {
  std::vector<VectorField> out;
  for (unsigned l = 1; l <= k; ++l) {
    VectorField X = zero_multivector(chart, 1);
    for (std::size_t j = 0; j < base->dim(); ++j) {
      X.add_term({static_cast<std::uint16_t>(j)}, Polynomial::variable(chart, tangent_copy_name(l, base->coordinate(j).name)));
    }
    out.push_back(X);
  }
  return out;
}

}  // namespace

TotalChart total_chart(const ChartPtr& base, const std::vector<std::string>& frame) {
  return make_total(base, frame, "u_", "_total");
}

TotalChart total_chart(const LieAlgebroid& A) { return total_chart(A.base(), A.frame_names()); }

TotalChart tangent_chart(const ChartPtr& base) {
  std::vector<std::string> names;
  for (const auto& c : base->coordinates()) names.push_back(c.name);
  return make_total(base, names, "xdot_", "_T");
}

DifferentialForm lambda_mu(const TotalChart& E, const std::vector<DifferentialForm>& forms, std::size_t degree) {
  if (forms.size() != E.rank()) {
    throw DomainError("expected " + std::to_string(E.rank()) + " forms, got " + std::to_string(forms.size()));
  }
  if (!forms.empty()) degree = forms.front().degree();
  DifferentialForm out = zero_form(E.chart, degree);
  for (std::size_t d = 0; d < forms.size(); ++d) {
    DifferentialForm f = checked_on(E.chart, forms[d], degree, "form");
    out += Polynomial::variable(E.chart, E.fiber(d)) * f;
  }
  return out;
}

bool is_linear(const TotalChart& E, const DifferentialForm& L) {
  const DifferentialForm a = transfer(L, E.chart);
  for (const auto& [idx, c] : a.coefficients()) {
    const std::size_t du = count_fiber_slots(E, idx);
    if (du > 1) return false;
    const int want = du == 0 ? 1 : 0;
    for (const auto& [e, value] : c.terms()) {
      if (fiber_degree(E, e) != want) return false;
    }
  }
  return true;
}

BundleForms decompose(const TotalChart& E, const DifferentialForm& L) {
  const std::size_t k = L.degree();
  if (k == 0) throw DomainError("decompose needs a form of degree >= 1");
  if (!is_linear(E, L)) throw DomainError("form is not linear");
  const DifferentialForm a = transfer(L, E.chart);

  BundleForms out;
  out.k = k;
  const int sign = sign_pow(k - 1);
  std::vector<DifferentialForm> mu_total(E.rank(), zero_form(E.chart, k - 1));
  for (const auto& [idx, c] : a.coefficients()) {
    if (count_fiber_slots(E, idx) != 1) continue;
    // sorted tuples put the single du last
    const std::size_t d = idx.back() - E.base->dim();
    IndexTuple rest(idx.begin(), idx.end() - 1);
    mu_total[d].add_term(rest, sign * c);
  }

  const DifferentialForm remainder = a - exterior_derivative(lambda_mu(E, mu_total, k - 1));
  for (std::size_t d = 0; d < E.rank(); ++d) {
    DifferentialForm nu = zero_form(E.chart, k);
    for (const auto& [idx, c] : remainder.coefficients()) {
      if (count_fiber_slots(E, idx) != 0) throw OracleDisagreement("d Lambda_mu does not absorb the du terms");
      nu.add_term(idx, c.diff(E.fiber(d)));
    }
    out.mu.push_back(on_base(E, mu_total[d]));
    out.nu.push_back(on_base(E, nu));
    if (out.mu.back().is_zero()) out.mu.back() = zero_form(E.base, k - 1);
    if (out.nu.back().is_zero()) out.nu.back() = zero_form(E.base, k);
  }
  if (!(compose(E, out) == a)) throw OracleDisagreement("decomposition does not recompose");
  return out;
}

DifferentialForm compose(const TotalChart& E, const BundleForms& forms) {
  if (forms.k == 0) throw DomainError("linear forms of degree 0 have no (mu, nu) pair");
  DifferentialForm out = exterior_derivative(lambda_mu(E, forms.mu, forms.k - 1));
  out += lambda_mu(E, forms.nu, forms.k);
  if (out.is_zero()) out = zero_form(E.chart, forms.k);
  return out;
}

DifferentialForm tau(const DifferentialForm& beta) {
  if (beta.degree() == 0) throw DomainError("tau needs a form of degree >= 1");
  const TotalChart T = tangent_chart(beta.chart());
  VectorField xdot = zero_multivector(T.chart, 1);
  for (std::size_t j = 0; j < T.rank(); ++j) xdot.add_term({static_cast<std::uint16_t>(j)}, Polynomial::variable(T.chart, T.fiber(j)));
  DifferentialForm out = contract(xdot, transfer(beta, T.chart));
  if (out.is_zero()) out = zero_form(T.chart, beta.degree() - 1);
  return out;
}

DifferentialForm tangent_lift(const DifferentialForm& alpha) {
  DifferentialForm out = tau(exterior_derivative(alpha));
  if (alpha.degree() > 0) out += exterior_derivative(tau(alpha));
  if (out.is_zero()) out = zero_form(tangent_chart(alpha.chart()).chart, alpha.degree());
  return out;
}

// Both sides are polynomials in the sample variables (x, xdot, dx_s, dxdot_s)
// of total degree at most D = max(deg alpha + 1, deg candidate) + k, where
// deg is the largest total degree of a coefficient.
// Samples are drawn uniformly from the integer grid {-G..G}, so by
// Schwartz-Zippel a non-zero difference vanishes at one sample with
// probability at most D / (2G + 1), and at all samples with probability at
// most (D / (2G + 1))^points. The bound is written into the report notes.
CheckReport check_tangent_lift_sampled(const DifferentialForm& alpha, const DifferentialForm& candidate,
                                       std::uint64_t seed, unsigned points) {
  constexpr long G = 1000;
  const ChartPtr& base = alpha.chart();
  const std::size_t n = base->dim();
  const std::size_t k = alpha.degree();
  const ChartPtr T = tangent_chart(base).chart;
  const DifferentialForm lifted = checked_on(T, candidate, k, "candidate lift");

  int max_degree = 0;
  for (const auto& [idx, c] : alpha.coefficients()) max_degree = std::max(max_degree, c.total_degree());
  int candidate_degree = 0;
  for (const auto& [idx, c] : lifted.coefficients()) candidate_degree = std::max(candidate_degree, c.total_degree());
  const long D = std::max(max_degree + 1, candidate_degree) + static_cast<long>(k);

  CheckReport report;
  {
    std::ostringstream note;
    note << "ALPHA_T: " << points << " samples on {-" << G << ".." << G << "}, degree bound " << D
         << ", false-pass probability <= (" << D << "/" << 2 * G + 1 << ")^" << points;
    report.notes.push_back(note.str());
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-G, G);
  auto draw = [&](std::size_t count) {
    std::vector<Rational> v(count);
    for (auto& r : v) r = Rational(dist(rng));
    return v;
  };

  for (unsigned sample = 0; sample < points; ++sample) {
    const auto x = draw(n);
    const auto xdot = draw(n);
    std::vector<std::vector<Rational>> dx(k), dxdot(k);
    for (std::size_t s = 0; s < k; ++s) {
      dx[s] = draw(n);
      dxdot[s] = draw(n);
    }

    // alpha_T at (x, xdot) on the vectors (dx_s, dxdot_s)
    std::vector<VectorField> U;
    for (std::size_t s = 0; s < k; ++s) {
      VectorField V = zero_multivector(T, 1);
      for (std::size_t j = 0; j < n; ++j) {
        V.add_term({static_cast<std::uint16_t>(j)}, Polynomial::constant(T, dx[s][j]));
        V.add_term({static_cast<std::uint16_t>(n + j)}, Polynomial::constant(T, dxdot[s][j]));
      }
      U.push_back(V);
    }
    std::vector<Rational> point = x;
    point.insert(point.end(), xdot.begin(), xdot.end());
    const Rational lhs = k == 0 ? scalar(lifted).eval(point) : evaluate(lifted, U).eval(point);

    // derivative of alpha-bar at (x; dx_1..dx_k) along (xdot; dxdot_1..dxdot_k)
    Rational rhs = 0;
    for (const auto& [idx, c] : alpha.coefficients()) {
      auto minor = [&](std::size_t replaced) {
        std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
        for (std::size_t s = 0; s < k; ++s) {
          const auto& row = s == replaced ? dxdot[s] : dx[s];
          for (std::size_t t = 0; t < k; ++t) m[s][t] = row[idx[t]];
        }
        return linalg::determinant(std::move(m));
      };
      Rational directional = 0;
      for (std::size_t j = 0; j < n; ++j) directional += xdot[j] * c.diff(j).eval(x);
      rhs += directional * minor(k);
      const Rational value = c.eval(x);
      for (std::size_t s = 0; s < k; ++s) rhs += value * minor(s);
    }

    if (lhs != rhs) {
      Violation v;
      v.tag = "ALPHA_T";
      v.witness = {sample + 1};
      v.labels = {"sample " + std::to_string(sample + 1)};
      v.residual.push_back({"", Polynomial::constant(base, lhs - rhs)});
      report.violations.push_back(std::move(v));
    }
  }
  return report;
}

CheckReport check_tangent_lift_sampled(const DifferentialForm& alpha, std::uint64_t seed, unsigned points) {
  return check_tangent_lift_sampled(alpha, tangent_lift(alpha), seed, points);
}

namespace {

FiberFunctional lambda_bar_impl(const LieAlgebroid& A, const DifferentialForm& L, const BundleForms& forms) {
  const unsigned k = static_cast<unsigned>(forms.k);
  const std::size_t r = A.rank();
  const ChartPtr& base = A.base();
  const LieAlgebroid P = tangent_prolongation(A, k);
  const ChartPtr& Pc = P.base();
  const auto U = tautological_fields(Pc, base, k);

  FiberFunctional route1;
  route1.values.assign(P.rank(), Polynomial(Pc));
  for (std::size_t a = 0; a < r; ++a) {
    const DifferentialForm mu = checked_on(Pc, forms.mu[a], k - 1, "mu");
    const DifferentialForm nu = checked_on(Pc, forms.nu[a], k, "nu");
    for (unsigned m = 1; m <= k; ++m) {
      DifferentialForm v = iterated_contract(U, k, m + 1, iterated_contract(U, m - 1, 1, mu));
      route1.values[(m - 1) * r + a] = sign_pow(m - 1) * scalar(v).embed(Pc);
    }
    route1.values[k * r + a] = evaluate(exterior_derivative(mu) + nu, U).embed(Pc);
  }

  // Contract L with the tangent vectors of the frame sections on the chart
  // (x, xdot_1..xdot_k, u).
  std::vector<Coordinate> coords = Pc->coordinates();
  const TotalChart E = total_chart(A);
  for (std::size_t d = 0; d < r; ++d) coords.push_back(E.chart->coordinate(E.fiber(d)));
  const ChartPtr X = Chart::make(Pc->name() + "_u", std::move(coords));
  const DifferentialForm LX = transfer(L, X);
  const auto V = tautological_fields(X, base, k);
  const std::size_t u0 = Pc->dim();
  auto at_fiber = [&](Polynomial p, std::optional<std::size_t> a) {
    for (std::size_t d = 0; d < r; ++d) p = p.substitute(u0 + d, Rational(a && *a == d ? 1 : 0));
    return p.embed(Pc);
  };

  FiberFunctional route2;
  route2.values.assign(P.rank(), Polynomial(Pc));
  for (std::size_t a = 0; a < r; ++a) {
    for (unsigned m = 1; m <= k; ++m) {
      auto W = V;
      W[m - 1] += partial(X, u0 + a);
      route2.values[(m - 1) * r + a] = at_fiber(evaluate(LX, W), std::nullopt);
    }
    route2.values[k * r + a] = at_fiber(evaluate(LX, V), a);
  }

  for (std::size_t i = 0; i < P.rank(); ++i) {
    if (!(route1.values[i] == route2.values[i])) {
      throw OracleDisagreement("Lambda-bar on " + P.frame_names()[i] + ": " + route1.values[i].to_string() +
                               " vs " + route2.values[i].to_string());
    }
  }
  return route1;
}

}  // namespace

FiberFunctional lambda_bar_on_frame(const LieAlgebroid& A, const DifferentialForm& L) {
  const TotalChart E = total_chart(A);
  return lambda_bar_impl(A, L, decompose(E, L));
}

FiberFunctional lambda_bar_on_frame(const LieAlgebroid& A, const BundleForms& forms) {
  if (forms.mu.size() != A.rank() || forms.nu.size() != A.rank()) {
    throw DomainError("expected one (mu, nu) pair per frame section");
  }
  const TotalChart E = total_chart(A);
  return lambda_bar_impl(A, compose(E, forms), forms);
}

}  // namespace imcalc
