#include "imcalc/dirac.hpp"

#include <random>
#include <optional>

#include "exact_linalg.hpp"
#include "imcalc/errors.hpp"

namespace imcalc {

namespace {

using Row = std::vector<Polynomial>;

// [X^1..X^n, alpha_1..alpha_n]
Row row_of(const ChartPtr& base, const VectorField& X, const DifferentialForm& alpha) {
  const std::size_t n = base->dim();
  Row row;
  for (std::size_t j = 0; j < n; ++j) row.push_back(component(X, j).embed(base));
  for (std::size_t j = 0; j < n; ++j) row.push_back(alpha.coefficient({static_cast<std::uint16_t>(j)}).embed(base));
  return row;
}

std::vector<Row> generator_matrix(const DiracCandidate& D) {
  std::vector<Row> rows;
  for (std::size_t a = 0; a < D.rank(); ++a) rows.push_back(row_of(D.base, D.X[a], D.alpha[a]));
  return rows;
}

std::vector<std::string> basis_labels(const ChartPtr& base) {
  std::vector<std::string> out;
  for (const auto& c : base->coordinates()) out.push_back("d/d" + c.name);
  for (const auto& c : base->coordinates()) out.push_back("d" + c.name);
  return out;
}

linalg::Matrix evaluate_rows(const std::vector<Row>& rows, const std::vector<Rational>& p) {
  linalg::Matrix m;
  for (const auto& row : rows) {
    std::vector<Rational> values;
    for (const auto& e : row) values.push_back(e.eval(p));
    m.push_back(std::move(values));
  }
  return m;
}

Polynomial pairing(const DiracCandidate& D, std::size_t a, std::size_t b) {
  return scalar(contract(D.X[a], D.alpha[b])) + scalar(contract(D.X[b], D.alpha[a]));
}

Polynomial poly_det(const std::vector<Row>& m, const ChartPtr& chart) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(chart, Rational(1));
  if (n == 1) return m[0][0];
  Polynomial out(chart);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<Row> minor;
    for (std::size_t r = 1; r < n; ++r) {
      Row row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][c] * poly_det(minor, chart);
    out += c % 2 == 0 ? term : -term;
  }
  return out;
}

// Columns S of the generator matrix whose r x r minor has a non-zero
// constant determinant, with that determinant.
std::optional<std::pair<std::vector<std::size_t>, Rational>> constant_minor(const std::vector<Row>& G,
                                                                            const ChartPtr& chart) {
  const std::size_t r = G.size();
  const std::size_t cols = r == 0 ? 0 : G.front().size();
  if (r > cols) return std::nullopt;
  std::vector<std::size_t> S(r);
  for (std::size_t i = 0; i < r; ++i) S[i] = i;
  while (true) {
    std::vector<Row> M(r, Row(r));
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t i = 0; i < r; ++i) M[a][i] = G[a][S[i]];
    const Polynomial det = poly_det(M, chart);
    if (!det.is_zero() && det.is_constant()) return std::make_pair(S, det.constant_term());
    std::size_t pos = r;
    while (pos > 0 && S[pos - 1] == cols - r + pos - 1) --pos;
    if (pos == 0) return std::nullopt;
    ++S[pos - 1];
    for (std::size_t j = pos; j < r; ++j) S[j] = S[j - 1] + 1;
  }
}

// Solves sum_a c_a M[a][i] = v[i] (M square with constant determinant det)
// by Cramer's rule.
std::vector<Polynomial> cramer(const std::vector<Row>& M, const Row& v, const Rational& det, const ChartPtr& chart) {
  const std::size_t r = M.size();
  std::vector<Polynomial> c;
  for (std::size_t a = 0; a < r; ++a) {
    std::vector<Row> Ma = M;
    Ma[a] = v;
    c.push_back(poly_det(Ma, chart) * (Rational(1) / det));
  }
  return c;
}

}  // namespace

DiracCandidate dirac_from_im(const IMForm& im) {
  if (im.forms.k != 2) throw DomainError("Dirac candidates come from IM 2-forms");
  const LieAlgebroid& A = im.algebroid;
  DiracCandidate D{A.base(), {}, {}, {}};
  for (std::size_t a = 0; a < A.rank(); ++a) {
    D.X.push_back(A.anchor_field(a));
    D.alpha.push_back(im.forms.mu[a]);
    D.nu.push_back(im.forms.nu[a]);
  }
  return D;
}

DiracCandidate dirac_graph(const Multivector& pi, std::vector<DifferentialForm> nu) {
  if (pi.degree() != 2 && !pi.is_zero()) throw DomainError("graph needs a bivector");
  const ChartPtr& c = pi.chart();
  const std::size_t n = c->dim();
  if (nu.empty()) nu.assign(n, zero_form(c, 2));
  if (nu.size() != n) throw DomainError("graph needs one nu_L value per coordinate differential");
  DiracCandidate D{c, {}, {}, {}};
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<Polynomial> comps;
    for (std::size_t j = 0; j < n; ++j)
      comps.push_back(pi.coefficient({static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(j)}));
    D.X.push_back(vector_field(c, comps));
    D.alpha.push_back(dx(c, a));
    D.nu.push_back(transfer(nu[a], c));
  }
  return D;
}

CheckReport check_isotropic(const DiracCandidate& D) {
  CheckReport report;
  for (std::size_t a = 0; a < D.rank(); ++a) {
    for (std::size_t b = a; b < D.rank(); ++b) {
      Polynomial p = pairing(D, a, b);
      if (p.is_zero()) continue;
      report.violations.push_back({"ISOTROPY", {a + 1, b + 1}, {}, residual_of(p), ""});
    }
  }
  return report;
}

std::vector<std::vector<Rational>> default_sample_points(std::size_t n, std::uint64_t seed, std::size_t random_count) {
  std::vector<std::vector<Rational>> out;
  std::vector<int> digits(n, -1);
  while (true) {
    std::vector<Rational> p;
    for (int d : digits) p.emplace_back(d);
    out.push_back(std::move(p));
    std::size_t i = 0;
    while (i < n && digits[i] == 1) digits[i++] = -1;
    if (i == n) break;
    ++digits[i];
  }
  if (n == 0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
  for (std::size_t s = 0; s < random_count; ++s) {
    std::vector<Rational> p;
    for (std::size_t j = 0; j < n; ++j) {
      Rational q(num(rng), den(rng));
      q.canonicalize();
      p.push_back(q);
    }
    out.push_back(std::move(p));
  }
  return out;
}

LagrangianReport check_lagrangian(const DiracCandidate& D, const std::vector<std::vector<Rational>>& points) {
  LagrangianReport out;
  out.report = check_isotropic(D);
  const std::size_t n = D.base->dim();
  const auto G = generator_matrix(D);
  std::vector<std::vector<Polynomial>> pair(D.rank(), std::vector<Polynomial>(D.rank()));
  for (std::size_t a = 0; a < D.rank(); ++a)
    for (std::size_t b = a; b < D.rank(); ++b) pair[a][b] = pairing(D, a, b);

  for (std::size_t s = 0; s < points.size(); ++s) {
    const auto& p = points[s];
    if (p.size() != n) throw DomainError("sample point has the wrong dimension");
    PointVerdict v;
    v.point = p;
    v.rank = linalg::rank(evaluate_rows(G, p));
    v.isotropic = true;
    for (std::size_t a = 0; a < D.rank() && v.isotropic; ++a)
      for (std::size_t b = a; b < D.rank() && v.isotropic; ++b) v.isotropic = pair[a][b].eval(p) == 0;
    v.lagrangian = v.isotropic && v.rank == n;
    if (!v.lagrangian) {
      Violation viol{"LAGRANGIAN", {s + 1}, {}, {}, ""};
      viol.note = "rank " + std::to_string(v.rank) + (v.isotropic ? "" : ", not isotropic");
      out.report.violations.push_back(std::move(viol));
    }
    out.points.push_back(std::move(v));
  }
  return out;
}

DiracPair nubrk(const DiracPair& a, const DiracPair& b, const DifferentialForm& nu_X_alpha) {
  DiracPair out;
  out.X = lie_bracket(a.X, b.X);
  out.alpha = lie_derivative(a.X, b.alpha) - contract(b.X, exterior_derivative(a.alpha)) - contract(b.X, nu_X_alpha);
  return out;
}

DiracPair span_element(const DiracCandidate& D, const std::vector<Polynomial>& c) {
  if (c.size() != D.rank()) throw DomainError("one coefficient per generator expected");
  DiracPair out{zero_multivector(D.base, 1), zero_form(D.base, 1)};
  for (std::size_t a = 0; a < D.rank(); ++a) {
    out.X += c[a] * D.X[a];
    out.alpha += c[a] * D.alpha[a];
  }
  return out;
}

DifferentialForm nu_of(const DiracCandidate& D, const std::vector<Polynomial>& c) {
  if (c.size() != D.rank()) throw DomainError("one coefficient per generator expected");
  DifferentialForm out = zero_form(D.base, 2);
  for (std::size_t a = 0; a < D.rank(); ++a) out += c[a] * D.nu[a];
  return out;
}

DiracPair bracket_nubrk(const DiracCandidate& D, const std::vector<Polynomial>& c1,
                        const std::vector<Polynomial>& c2) {
  return nubrk(span_element(D, c1), span_element(D, c2), nu_of(D, c1));
}

ClosureReport check_closure(const DiracCandidate& D, const std::vector<std::vector<Rational>>& points) {
  ClosureReport out;
  const std::size_t r = D.rank();
  const auto G = generator_matrix(D);
  const auto labels = basis_labels(D.base);
  const auto minor = constant_minor(G, D.base);
  out.certified = minor.has_value();
  out.report.notes.push_back(out.certified ? "closure decided symbolically"
                                           : "closure tested at " + std::to_string(points.size()) + " sample points");

  auto unit = [&](std::size_t a) {
    std::vector<Polynomial> c(r, Polynomial(D.base));
    c[a] = Polynomial::constant(D.base, Rational(1));
    return c;
  };

  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a + 1; b < r; ++b) {
      const DiracPair br = bracket_nubrk(D, unit(a), unit(b));
      const Row v = row_of(D.base, br.X, br.alpha);
      Violation viol{"CLOSURE", {a + 1, b + 1}, {}, {}, ""};
      if (minor) {
        const auto& [S, det] = *minor;
        std::vector<Row> M(r, Row(r));
        Row vs(r);
        for (std::size_t i = 0; i < r; ++i) {
          for (std::size_t g = 0; g < r; ++g) M[g][i] = G[g][S[i]];
          vs[i] = v[S[i]];
        }
        const auto c = cramer(M, vs, det, D.base);
        for (std::size_t i = 0; i < v.size(); ++i) {
          Polynomial res = v[i];
          for (std::size_t g = 0; g < r; ++g) res -= c[g] * G[g][i];
          if (!res.is_zero()) viol.residual.push_back({labels[i], res});
        }
      } else {
        for (std::size_t s = 0; s < points.size(); ++s) {
          auto m = evaluate_rows(G, points[s]);
          const std::size_t rank = linalg::rank(m);
          m.push_back({});
          for (const auto& e : v) m.back().push_back(e.eval(points[s]));
          if (linalg::rank(m) != rank) {
            viol.note = "outside the span at sample " + std::to_string(s + 1);
            for (std::size_t i = 0; i < v.size(); ++i)
              if (!v[i].is_zero()) viol.residual.push_back({labels[i], v[i]});
            break;
          }
        }
      }
      if (!viol.residual.empty()) out.report.violations.push_back(std::move(viol));
    }
  }
  return out;
}

}  // namespace imcalc
