#pragma once

// Named algebroids and candidate data shared by the unit and acceptance
// suites, plus generators of random algebroids that satisfy the axioms by
// construction.

#include <random>
#include <string>
#include <vector>

#include "imcalc/algebroid.hpp"
#include "imcalc/cartan.hpp"
#include "imcalc/im_forms.hpp"
#include "support/random.hpp"

namespace imcalc::testing {

inline ChartPtr point_chart() { return Chart::make_base("pt", {}); }

inline std::vector<std::string> frame_names(std::size_t r, const std::string& prefix = "e") {
  std::vector<std::string> out;
  for (std::size_t a = 1; a <= r; ++a) out.push_back(prefix + std::to_string(a));
  return out;
}

inline std::vector<std::vector<Polynomial>> zero_anchor(const ChartPtr& base, std::size_t r) {
  return std::vector<std::vector<Polynomial>>(r, std::vector<Polynomial>(base->dim(), Polynomial(base)));
}

/// Structure constants of a Lie algebra: C[a][b][c], dense and antisymmetric.
using Constants = std::vector<std::vector<std::vector<Rational>>>;

inline Constants empty_constants(std::size_t r) {
  return Constants(r, std::vector<std::vector<Rational>>(r, std::vector<Rational>(r, Rational(0))));
}

inline void set_bracket(Constants& C, std::size_t a, std::size_t b, std::size_t c, const Rational& v) {
  C[a][b][c] = v;
  C[b][a][c] = -v;
}

inline std::vector<StructureEntry> entries_from(const Constants& C, const ChartPtr& base) {
  std::vector<StructureEntry> out;
  const std::size_t r = C.size();
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a + 1; b < r; ++b) {
      for (std::size_t c = 0; c < r; ++c) {
        if (C[a][b][c] != 0) out.push_back({a, b, c, Polynomial::constant(base, C[a][b][c])});
      }
    }
  }
  return out;
}

inline Constants so3_constants() {
  auto C = empty_constants(3);
  set_bracket(C, 0, 1, 2, 1);
  set_bracket(C, 1, 2, 0, 1);
  set_bracket(C, 2, 0, 1, 1);
  return C;
}

inline Constants sl2_constants() {  // [h,e] = 2e, [h,f] = -2f, [e,f] = h
  auto C = empty_constants(3);
  set_bracket(C, 0, 1, 1, 2);
  set_bracket(C, 0, 2, 2, -2);
  set_bracket(C, 1, 2, 0, 1);
  return C;
}

inline Constants heisenberg_constants() {  // [p,q] = z
  auto C = empty_constants(3);
  set_bracket(C, 0, 1, 2, 1);
  return C;
}

inline Constants affine_constants() {  // [e1,e2] = e2
  auto C = empty_constants(2);
  set_bracket(C, 0, 1, 1, 1);
  return C;
}

/// F1: so(3) over a point.
inline LieAlgebroid f1_so3() {
  auto pt = point_chart();
  return LieAlgebroid(pt, frame_names(3), zero_anchor(pt, 3), entries_from(so3_constants(), pt));
}

/// F2: tangent algebroid of R^n in the coordinate frame (n = 2 by default).
inline LieAlgebroid f2_tangent(std::size_t n = 2) {
  auto c = numbered_chart(n);
  auto anchor = zero_anchor(c, n);
  for (std::size_t a = 0; a < n; ++a) anchor[a][a] = Polynomial::constant(c, Rational(1));
  return LieAlgebroid(c, frame_names(n), anchor, {});
}

/// Lie-Poisson bivector of so(3)* with pi^{12} replaced by `pi12`.
inline Multivector so3_bivector(const std::string& pi12 = "x3") {
  auto c = numbered_chart(3);
  Multivector pi = zero_multivector(c, 2);
  pi.add_term({0, 1}, parse_polynomial(pi12, c));
  pi.add_term({1, 2}, parse_polynomial("x1", c));
  pi.add_term({2, 0}, parse_polynomial("x2", c));
  return pi;
}

/// F3: Koszul algebroid of the so(3)* Lie-Poisson bivector.
inline LieAlgebroid f3_koszul() { return koszul_algebroid(so3_bivector()); }

/// F4: the trivial algebroid T*R^2 (zero anchor and bracket).
inline LieAlgebroid f4_trivial() {
  auto c = numbered_chart(2);
  return LieAlgebroid(c, frame_names(2), zero_anchor(c, 2), {});
}

/// F5: a bracket over a point violating Jacobi: [e1,e2] = e1, [e2,e3] = e2.
inline LieAlgebroid f5_broken() {
  auto pt = point_chart();
  auto C = empty_constants(3);
  set_bracket(C, 0, 1, 0, 1);
  set_bracket(C, 1, 2, 1, 1);
  return LieAlgebroid(pt, frame_names(3), zero_anchor(pt, 3), entries_from(C, pt), Verification::unchecked);
}

/// F8: the anchor of the bivector with pi^{12} = x3^2, keeping the
/// structure functions of F3. Not a Lie algebroid.
inline LieAlgebroid f8_perturbed() {
  auto pi = so3_bivector("x3^2");
  const auto& c = pi.chart();
  auto anchor = zero_anchor(c, 3);
  for (std::uint16_t a = 0; a < 3; ++a) {
    for (std::uint16_t j = 0; j < 3; ++j) anchor[a][j] = pi.coefficient({a, j});
  }
  return LieAlgebroid(c, frame_names(3), anchor, entries_from(so3_constants(), c), Verification::unchecked);
}

/// mu(e^i) = dx^i on a rank-n frame over an n-dimensional chart.
inline std::vector<DifferentialForm> identity_mu(const ChartPtr& c) {
  std::vector<DifferentialForm> mu;
  for (std::size_t i = 0; i < c->dim(); ++i) mu.push_back(dx(c, i));
  return mu;
}

inline std::vector<DifferentialForm> zero_forms(const ChartPtr& c, std::size_t count, std::size_t degree) {
  return std::vector<DifferentialForm>(count, zero_form(c, degree));
}

/// F4's nu: nu(e^1) = x2 dx1^dx2, nu(e^2) = x1^2 dx1^dx2.
inline std::vector<DifferentialForm> f4_nu(const ChartPtr& c) {
  auto w = wedge(dx(c, 0), dx(c, 1));
  return {parse_polynomial("x2", c) * w, parse_polynomial("x1^2", c) * w};
}

/// F7's eta = x1 dx1^dx2 on R^2.
inline DifferentialForm f7_eta(const ChartPtr& c) { return parse_polynomial("x1", c) * wedge(dx(c, 0), dx(c, 1)); }

/// Candidate IM 2-forms on the fixtures: F4 with the f4 nu, F6 (mu = id on
/// F3, nu = 0), F7 from eta, F8 (mu = id on F8, nu = 0).
inline IMForm f4_form() { return IMForm(f4_trivial(), {2, identity_mu(numbered_chart(2)), f4_nu(numbered_chart(2))}); }
inline IMForm f6_form() { return IMForm(f3_koszul(), {2, identity_mu(numbered_chart(3)), zero_forms(numbered_chart(3), 3, 2)}); }
inline IMForm f7_form() { return im_from_form(f2_tangent(2), f7_eta(numbered_chart(2))); }
inline IMForm f8_form() {
  return IMForm(f8_perturbed(), {2, identity_mu(numbered_chart(3)), zero_forms(numbered_chart(3), 3, 2)});
}

// ---------------------------------------------------------------------------
// Random algebroids

/// Invertible rational matrix built as a product of a random unit lower and
/// unit upper triangular matrix, with its inverse.
struct BasisChange {
  std::vector<std::vector<Rational>> P, Pinv;
};

inline BasisChange random_basis_change(std::mt19937& rng, std::size_t r) {
  std::vector<std::vector<Rational>> L(r, std::vector<Rational>(r, Rational(0))), U = L;
  std::uniform_int_distribution<int> small(-2, 2);
  for (std::size_t i = 0; i < r; ++i) {
    L[i][i] = 1;
    U[i][i] = 1;
    for (std::size_t j = 0; j < i; ++j) L[i][j] = small(rng);
    for (std::size_t j = i + 1; j < r; ++j) U[i][j] = small(rng);
  }
  auto mul = [r](const auto& X, const auto& Y) {
    std::vector<std::vector<Rational>> Z(r, std::vector<Rational>(r, Rational(0)));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < r; ++j) Z[i][j] += X[i][k] * Y[k][j];
    return Z;
  };
  // Inverse of a unit triangular matrix T = I + N is sum_k (-N)^k.
  auto unit_inverse = [&](const auto& T) {
    std::vector<std::vector<Rational>> N = T, I(r, std::vector<Rational>(r, Rational(0)));
    for (std::size_t i = 0; i < r; ++i) {
      N[i][i] = 0;
      I[i][i] = 1;
    }
    for (auto& row : N)
      for (auto& v : row) v = -v;
    auto sum = I, power = I;
    for (std::size_t k = 1; k < r; ++k) {
      power = mul(power, N);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) sum[i][j] += power[i][j];
    }
    return sum;
  };
  BasisChange out;
  out.P = mul(L, U);
  out.Pinv = mul(unit_inverse(U), unit_inverse(L));
  return out;
}

/// Structure constants in the basis f_a = P_ab e_b.
inline Constants change_basis(const Constants& C, const BasisChange& B) {
  const std::size_t r = C.size();
  auto out = empty_constants(r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          const Rational w = B.P[a][i] * B.P[b][j];
          if (w == 0) continue;
          for (std::size_t k = 0; k < r; ++k) {
            if (C[i][j][k] == 0) continue;
            for (std::size_t c = 0; c < r; ++c) out[a][b][c] += w * C[i][j][k] * B.Pinv[k][c];
          }
        }
  return out;
}

inline Constants random_lie_algebra(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 5);
  Constants C;
  switch (pick(rng)) {
    case 0: C = so3_constants(); break;
    case 1: C = sl2_constants(); break;
    case 2: C = heisenberg_constants(); break;
    case 3: C = affine_constants(); break;
    case 4: C = empty_constants(2); break;
    default: C = empty_constants(3); break;
  }
  return change_basis(C, random_basis_change(rng, C.size()));
}

/// A Lie algebra over a point.
inline LieAlgebroid algebra_over_point(const Constants& C) {
  auto pt = point_chart();
  return LieAlgebroid(pt, frame_names(C.size()), zero_anchor(pt, C.size()), entries_from(C, pt));
}

/// Koszul algebroid of the Lie-Poisson structure pi^{ab} = C_ab^c x_c on g*.
inline LieAlgebroid coadjoint_algebroid(const Constants& C) {
  const std::size_t r = C.size();
  auto c = numbered_chart(r);
  Multivector pi = zero_multivector(c, 2);
  for (std::uint16_t a = 0; a < r; ++a)
    for (std::uint16_t b = a + 1; b < r; ++b) {
      Polynomial p(c);
      for (std::size_t k = 0; k < r; ++k) p += Polynomial::constant(c, C[a][b][k]) * Polynomial::variable(c, k);
      pi.add_term({a, b}, p);
    }
  return koszul_algebroid(pi);
}

/// Action algebroid of the adjoint action on g: rho(e_a) = -ad(e_a) as a
/// linear vector field, constant structure functions.
inline LieAlgebroid adjoint_action_algebroid(const Constants& C) {
  const std::size_t r = C.size();
  auto c = numbered_chart(r, "y");
  auto anchor = zero_anchor(c, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t k = 0; k < r; ++k) {
      Polynomial p(c);
      for (std::size_t b = 0; b < r; ++b) p -= Polynomial::constant(c, C[a][b][k]) * Polynomial::variable(c, b);
      anchor[a][k] = p;
    }
  return LieAlgebroid(c, frame_names(r), anchor, entries_from(C, c));
}

/// Tangent algebroid of R^n in a unipotent polynomial frame
/// e_a = d_a + sum_{b>a} p_ab(x) d_b, with p_ab affine in x.
inline LieAlgebroid unipotent_tangent_frame(std::mt19937& rng, std::size_t n) {
  auto c = numbered_chart(n);
  std::vector<std::vector<Polynomial>> M(n, std::vector<Polynomial>(n, Polynomial(c)));
  for (std::size_t a = 0; a < n; ++a) {
    M[a][a] = Polynomial::constant(c, Rational(1));
    for (std::size_t b = a + 1; b < n; ++b) M[a][b] = random_polynomial(rng, c, 1, 2);
  }
  // Minv = sum_k (-N)^k with N the strictly upper part of M.
  auto mul = [&](const auto& X, const auto& Y) {
    std::vector<std::vector<Polynomial>> Z(n, std::vector<Polynomial>(n, Polynomial(c)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) Z[i][j] += X[i][k] * Y[k][j];
    return Z;
  };
  auto N = M;
  auto Minv = M;
  for (std::size_t i = 0; i < n; ++i) {
    N[i][i] = Polynomial(c);
    for (std::size_t j = 0; j < n; ++j) {
      N[i][j] = -N[i][j];
      Minv[i][j] = Polynomial::constant(c, Rational(i == j ? 1 : 0));
    }
  }
  auto power = Minv;
  for (std::size_t k = 1; k < n; ++k) {
    power = mul(power, N);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) Minv[i][j] += power[i][j];
  }
  std::vector<StructureEntry> structure;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      // [e_a, e_b]^j = e_a(M_bj) - e_b(M_aj); expand in the frame with Minv.
      std::vector<Polynomial> w(n, Polynomial(c));
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) w[j] += M[a][i] * M[b][j].diff(i) - M[b][i] * M[a][j].diff(i);
      for (std::size_t k = 0; k < n; ++k) {
        Polynomial v(c);
        for (std::size_t j = 0; j < n; ++j) v += w[j] * Minv[j][k];
        if (!v.is_zero()) structure.push_back({a, b, k, v});
      }
    }
  return LieAlgebroid(c, frame_names(n), M, structure);
}

/// One of the random axiom-passing families above.
inline LieAlgebroid random_algebroid(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  switch (kind(rng)) {
    case 0: return algebra_over_point(random_lie_algebra(rng));
    case 1: return coadjoint_algebroid(random_lie_algebra(rng));
    case 2: return adjoint_action_algebroid(random_lie_algebra(rng));
    default: {
      std::uniform_int_distribution<std::size_t> dim(1, 3);
      return unipotent_tangent_frame(rng, dim(rng));
    }
  }
}

}  // namespace imcalc::testing
