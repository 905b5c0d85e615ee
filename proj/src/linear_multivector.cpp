#include "imcalc/linear_multivector.hpp"

#include "imcalc/errors.hpp"
#include "imcalc/prolongation.hpp"

namespace imcalc {

namespace {

WedgeSection zero_wedge(const ChartPtr& base, std::size_t r, std::size_t degree) {
  return WedgeSection(base, r, degree);
}

WedgeSection basis_wedge(const ChartPtr& base, std::size_t r, const IndexTuple& idx) {
  WedgeSection out(base, r, idx.size());
  out.add_term(idx, Polynomial::constant(base, Rational(1)));
  return out;
}

IndexTuple slice(const IndexTuple& idx, std::size_t from, std::size_t to) {
  return IndexTuple(idx.begin() + static_cast<std::ptrdiff_t>(from), idx.begin() + static_cast<std::ptrdiff_t>(to));
}

// c e_{I_1}^...^e_{I_{s-1}} ^ W ^ e_{I_{s+1}}^...^e_{I_q}, s 0-based here.
WedgeSection splice(const ChartPtr& base, std::size_t r, const Polynomial& c, const IndexTuple& I, std::size_t s,
                    const WedgeSection& W) {
  return c * wedge(wedge(basis_wedge(base, r, slice(I, 0, s)), W), basis_wedge(base, r, slice(I, s + 1, I.size())));
}

std::size_t bracket_degree(std::size_t p, std::size_t q) { return p + q == 0 ? 0 : p + q - 1; }

// [g, V] for a generator g: the function f when `frame` is empty, else e_j.
WedgeSection generator_bracket(const LieAlgebroid& A, const std::vector<VectorField>& rho, const Polynomial* f,
                               std::size_t j, const WedgeSection& V) {
  const ChartPtr& base = A.base();
  const std::size_t r = A.rank();
  const std::size_t p = f ? 0 : 1;
  const std::size_t q = V.degree();
  WedgeSection out = zero_wedge(base, r, bracket_degree(p, q));
  if (p + q == 0) return out;
  for (const auto& [I, c] : V.coefficients()) {
    if (!f) out.add_term(I, apply(rho[j], c));
    for (std::size_t s = 0; s < I.size(); ++s) {
      const bool flip = p == 0 && s % 2 == 1;
      const std::size_t l = I[s];
      if (f) {
        IndexTuple rest = I;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(s));
        const Polynomial v = c * apply(rho[l], *f);
        out.add_term(rest, flip ? v : -v);
        continue;
      }
      for (std::size_t m = 0; m < r; ++m) {
        const Polynomial& C = A.structure(j, l, m);
        if (C.is_zero()) continue;
        IndexTuple idx = I;
        idx[s] = static_cast<std::uint16_t>(m);
        out.add_term(idx, c * C);
      }
    }
  }
  return out;
}

std::vector<VectorField> anchor_fields(const LieAlgebroid& A) {
  std::vector<VectorField> out;
  for (std::size_t a = 0; a < A.rank(); ++a) out.push_back(A.anchor_field(a));
  return out;
}

WedgeSection schouten_with(const LieAlgebroid& A, const std::vector<VectorField>& rho, const WedgeSection& U,
                           const WedgeSection& V) {
  const ChartPtr& base = A.base();
  const std::size_t r = A.rank();
  const std::size_t p = U.degree();
  const std::size_t q = V.degree();
  WedgeSection out = zero_wedge(base, r, bracket_degree(p, q));
  if (p + q == 0) return out;
  for (const auto& [J, c] : V.coefficients()) {
    if (p > 0) {
      // [U, c] = (-1)^p [c, U]
      WedgeSection Uc = generator_bracket(A, rho, &c, 0, U);
      if (p % 2 == 1) Uc = -Uc;
      out += wedge(Uc, basis_wedge(base, r, J));
    }
    for (std::size_t s = 0; s < J.size(); ++s) {
      // [U, e_l] = -[e_l, U]
      WedgeSection Ue = -generator_bracket(A, rho, nullptr, J[s], U);
      WedgeSection term = splice(base, r, c, J, s, Ue);
      out += (p % 2 == 0 && s % 2 == 1) ? -term : term;
    }
  }
  return out;
}

void require_derivation_shape(const LieAlgebroid& A, const Derivation& D) {
  if (D.k == 0) throw DomainError("derivations have degree k - 1 with k >= 1");
  if (D.coord.size() != A.dim() || D.frame.size() != A.rank()) {
    throw DomainError("derivation has " + std::to_string(D.coord.size()) + " coordinate and " +
                      std::to_string(D.frame.size()) + " frame values, expected " + std::to_string(A.dim()) +
                      " and " + std::to_string(A.rank()));
  }
  for (const auto& s : D.coord) {
    if (!s.is_zero() && s.degree() != D.k - 1) throw DomainError("delta x^j must have degree k - 1");
  }
  for (const auto& s : D.frame) {
    if (!s.is_zero() && s.degree() != D.k) throw DomainError("delta e_a must have degree k");
  }
}

void require_same_bundle(const LieAlgebroid& A, const LinearMultivector& P) {
  if (!same_chart(P.bundle.base, A.base()) || P.bundle.frame != A.frame_names()) {
    throw DomainError("linear multivector lives on a different bundle");
  }
}

// Contraction of the first slot of a wedge section with a covector.
WedgeSection contract_dual(const std::vector<Polynomial>& eta, const WedgeSection& w) {
  WedgeSection out(w.chart(), w.slots(), w.degree() - 1);
  for (const auto& [I, c] : w.coefficients()) {
    for (std::size_t s = 0; s < I.size(); ++s) {
      if (eta[I[s]].is_zero()) continue;
      IndexTuple rest = I;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(s));
      const Polynomial v = eta[I[s]] * c;
      out.add_term(rest, s % 2 == 0 ? v : -v);
    }
  }
  return out;
}

}  // namespace

LinearMultivector zero_linear_multivector(const TotalChart& E, std::size_t k) {
  if (k == 0) throw DomainError("linear multivectors have degree k >= 1");
  LinearMultivector P{E, k, {}, {}};
  for (std::size_t d = 0; d < E.rank(); ++d) P.fiber.push_back(zero_wedge(E.base, E.rank(), k));
  for (std::size_t j = 0; j < E.base->dim(); ++j) P.mixed.push_back(zero_wedge(E.base, E.rank(), k - 1));
  return P;
}

bool is_linear_multivector(const TotalChart& E, const Multivector& P) {
  if (P.degree() == 0) return false;
  const Multivector Q = transfer(P, E.chart);
  const std::size_t n = E.base->dim();
  for (const auto& [idx, c] : Q.coefficients()) {
    std::size_t base_slots = 0;
    for (auto i : idx) base_slots += E.is_fiber(i) ? 0 : 1;
    if (base_slots > 1) return false;
    for (const auto& [exp, coeff] : c.terms()) {
      std::size_t u_degree = 0;
      for (std::size_t d = 0; d < E.rank(); ++d) u_degree += exp[n + d];
      if (u_degree != (base_slots == 0 ? 1u : 0u)) return false;
    }
  }
  return true;
}

LinearMultivector linear_multivector(const TotalChart& E, const Multivector& P) {
  if (!is_linear_multivector(E, P)) throw DomainError("multivector is not linear");
  const std::size_t n = E.base->dim();
  const std::size_t k = P.degree();
  LinearMultivector out = zero_linear_multivector(E, k);
  const Multivector Q = transfer(P, E.chart);
  for (const auto& [idx, c] : Q.coefficients()) {
    if (E.is_fiber(idx.front())) {
      IndexTuple B;
      for (auto i : idx) B.push_back(static_cast<std::uint16_t>(i - n));
      for (const auto& [exp, coeff] : c.terms()) {
        std::size_t d = 0;
        while (exp[n + d] == 0) ++d;
        Polynomial::Exponent base_exp(exp.begin(), exp.begin() + static_cast<std::ptrdiff_t>(n));
        out.fiber[d].add_term(B, Polynomial(E.base, {{base_exp, coeff}}));
      }
      continue;
    }
    // c dx_j ^ du_B = (-1)^{k-1} c du_B ^ dx_j
    IndexTuple B;
    for (std::size_t s = 1; s < idx.size(); ++s) B.push_back(static_cast<std::uint16_t>(idx[s] - n));
    const Polynomial v = c.embed(E.base);
    out.mixed[idx.front()].add_term(B, (k - 1) % 2 == 0 ? v : -v);
  }
  return out;
}

Multivector to_multivector(const LinearMultivector& P) {
  const TotalChart& E = P.bundle;
  const std::size_t n = E.base->dim();
  Multivector out(E.chart, E.chart->dim(), P.k);
  for (std::size_t d = 0; d < P.fiber.size(); ++d) {
    const Polynomial u = Polynomial::variable(E.chart, E.fiber(d));
    for (const auto& [B, c] : P.fiber[d].coefficients()) {
      IndexTuple idx;
      for (auto b : B) idx.push_back(static_cast<std::uint16_t>(n + b));
      out.add_term(idx, c.embed(E.chart) * u);
    }
  }
  for (std::size_t j = 0; j < P.mixed.size(); ++j) {
    for (const auto& [B, c] : P.mixed[j].coefficients()) {
      IndexTuple idx;
      for (auto b : B) idx.push_back(static_cast<std::uint16_t>(n + b));
      idx.push_back(static_cast<std::uint16_t>(j));
      out.add_term(idx, c.embed(E.chart));
    }
  }
  return out;
}

Derivation derivation_from_linear(const LinearMultivector& P) {
  Derivation D{P.k, P.mixed, {}};
  for (const auto& s : P.fiber) D.frame.push_back(-s);
  return D;
}

LinearMultivector linear_from_derivation(const TotalChart& E, const Derivation& D) {
  if (D.coord.size() != E.base->dim() || D.frame.size() != E.rank()) {
    throw DomainError("derivation does not match the bundle dimensions");
  }
  LinearMultivector P = zero_linear_multivector(E, D.k);
  for (std::size_t j = 0; j < D.coord.size(); ++j) P.mixed[j] += D.coord[j];
  for (std::size_t a = 0; a < D.frame.size(); ++a) P.fiber[a] -= D.frame[a];
  return P;
}

WedgeSection function_section(const LieAlgebroid& A, const Polynomial& f) {
  WedgeSection out = zero_wedge(A.base(), A.rank(), 0);
  out.add_term({}, f);
  return out;
}

WedgeSection apply_derivation(const Derivation& D, const WedgeSection& u) {
  if (D.k == 0) throw DomainError("derivations have degree k - 1 with k >= 1");
  const std::size_t r = D.frame.size();
  const ChartPtr& base = u.chart();
  WedgeSection out(base, r, u.degree() + D.k - 1);
  for (const auto& [I, c] : u.coefficients()) {
    const WedgeSection eI = basis_wedge(base, r, I);
    for (std::size_t j = 0; j < D.coord.size(); ++j) {
      const Polynomial dc = c.diff(j);
      if (!dc.is_zero()) out += wedge(dc * D.coord[j], eI);
    }
    for (std::size_t s = 0; s < I.size(); ++s) {
      WedgeSection term = splice(base, r, c, I, s, D.frame[I[s]]);
      out += ((D.k - 1) * s) % 2 == 0 ? term : -term;
    }
  }
  return out;
}

WedgeSection algebroid_schouten(const LieAlgebroid& A, const WedgeSection& U, const WedgeSection& V) {
  if (U.slots() != A.rank() || V.slots() != A.rank()) throw DomainError("wedge sections of a different rank");
  return schouten_with(A, anchor_fields(A), U, V);
}

Derivation inner_derivation(const LieAlgebroid& A, const WedgeSection& r) {
  if (r.degree() == 0) throw DomainError("inner derivations need r of degree >= 1");
  const auto rho = anchor_fields(A);
  Derivation D{r.degree(), {}, {}};
  for (std::size_t j = 0; j < A.dim(); ++j) {
    D.coord.push_back(schouten_with(A, rho, r, function_section(A, Polynomial::variable(A.base(), j))));
  }
  for (std::size_t a = 0; a < A.rank(); ++a) D.frame.push_back(schouten_with(A, rho, r, frame_section(A, a)));
  return D;
}

CheckReport check_gerstenhaber_derivation(const LieAlgebroid& A, const Derivation& D) {
  require_derivation_shape(A, D);
  const std::size_t n = A.dim();
  const std::size_t r = A.rank();
  const std::size_t k = D.k;
  const auto rho = anchor_fields(A);
  const auto& frame = A.frame_names();
  std::vector<std::string> coords;
  for (const auto& x : A.base()->coordinates()) coords.push_back(x.name);

  CheckReport report;
  if (!A.verified()) report.notes.push_back("algebroid axioms not verified");
  auto record = [&](const std::string& tag, std::vector<std::size_t> witness, std::vector<std::string> labels,
                    const WedgeSection& residual) {
    if (residual.is_zero()) return;
    report.violations.push_back({tag, std::move(witness), std::move(labels), residual_of(residual, frame, ""), {}});
  };
  auto br = [&](const WedgeSection& U, const WedgeSection& V) { return schouten_with(A, rho, U, V); };
  auto x = [&](std::size_t i) { return function_section(A, Polynomial::variable(A.base(), i)); };
  const bool odd = (k - 1) % 2 == 1;
  auto signed_term = [&](const WedgeSection& s) { return odd ? -s : s; };

  if (k >= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        record("R1", {i + 1, j + 1}, {coords[i], coords[j]},
               br(D.coord[i], x(j)) + signed_term(br(x(i), D.coord[j])));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t b = 0; b < r; ++b) {
      const WedgeSection eb = frame_section(A, b);
      record("R2", {i + 1, b + 1}, {coords[i], frame[b]},
             apply_derivation(D, br(x(i), eb)) - br(D.coord[i], eb) - signed_term(br(x(i), D.frame[b])));
    }
  }
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a + 1; b < r; ++b) {
      const WedgeSection ea = frame_section(A, a);
      const WedgeSection eb = frame_section(A, b);
      record("R3", {a + 1, b + 1}, {frame[a], frame[b]},
             apply_derivation(D, A.frame_bracket(a, b)) - br(D.frame[a], eb) - br(ea, D.frame[b]));
    }
  }
  return report;
}

Polynomial pairing(const WedgeSection& w, const std::vector<std::vector<Polynomial>>& covectors) {
  if (covectors.size() != w.degree()) throw DomainError("pairing needs one covector per wedge factor");
  WedgeSection out = w;
  for (const auto& eta : covectors) {
    if (eta.size() != w.slots()) throw DomainError("covector has the wrong number of components");
    out = contract_dual(eta, out);
  }
  auto it = out.coefficients().find({});
  return it == out.coefficients().end() ? Polynomial(w.chart()) : it->second;
}

FiberFunctional multivector_bar_on_frame(const LieAlgebroid& A, const LinearMultivector& P) {
  require_same_bundle(A, P);
  const std::size_t n = A.dim();
  const std::size_t r = A.rank();
  const std::size_t k = P.k;
  const LieAlgebroid Pro = cotangent_prolongation(A, static_cast<unsigned>(k));
  const ChartPtr& C = Pro.base();
  const Derivation D = derivation_from_linear(P);

  // xi[m][d] = xi^{m+1}_d
  std::vector<std::vector<Polynomial>> xi(k);
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t d = 0; d < r; ++d) xi[m].push_back(Polynomial::variable(C, n + m * r + d));
  auto lift = [&](const WedgeSection& w) { return embed_coefficients(w, C, r); };

  // The extended chart (x, xi, u) carries pi and the covectors of the frame.
  std::vector<Coordinate> coords = C->coordinates();
  for (std::size_t d = 0; d < r; ++d) coords.push_back(P.bundle.chart->coordinate(P.bundle.fiber(d)));
  const ChartPtr X = Chart::make(C->name() + "_u", std::move(coords));
  const std::size_t u0 = C->dim();
  const Multivector pi = transfer(to_multivector(P), X);
  auto covector = [&](std::size_t m) {
    DifferentialForm out = zero_form(X, 1);
    for (std::size_t d = 0; d < r; ++d) out += xi[m][d].embed(X) * dx(X, u0 + d);
    return out;
  };
  auto direct = [&](std::vector<DifferentialForm> upsilon, std::ptrdiff_t linear_a) {
    Polynomial v = evaluate(pi, upsilon);
    for (std::size_t d = 0; d < r; ++d) v = v.substitute(u0 + d, Rational(static_cast<long>(d) == linear_a ? 1 : 0));
    return v.embed(C);
  };
  auto compare = [&](const Polynomial& a, const Polynomial& b, const std::string& name) {
    if (!(a == b)) {
      throw OracleDisagreement("pi-bar(" + name + "): pairing gives " + a.to_string() + ", contraction gives " +
                               b.to_string());
    }
  };

  FiberFunctional F;
  F.values.assign(Pro.rank(), Polynomial(C));
  for (std::size_t m = 0; m < k; ++m) {
    std::vector<std::vector<Polynomial>> rest;
    for (std::size_t l = 0; l < k; ++l)
      if (l != m) rest.push_back(xi[l]);
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial v = pairing(lift(D.coord[j]), rest);
      if ((k - (m + 1)) % 2 == 1) v = -v;
      std::vector<DifferentialForm> upsilon;
      for (std::size_t l = 0; l < k; ++l) upsilon.push_back(l == m ? covector(l) + dx(X, j) : covector(l));
      const std::size_t slot = m * n + j;
      compare(v, direct(std::move(upsilon), -1), Pro.frame_names()[slot]);
      F.values[slot] = std::move(v);
    }
  }
  for (std::size_t a = 0; a < r; ++a) {
    Polynomial v = -pairing(lift(D.frame[a]), xi);
    std::vector<DifferentialForm> upsilon;
    for (std::size_t l = 0; l < k; ++l) upsilon.push_back(covector(l));
    const std::size_t slot = k * n + a;
    compare(v, direct(std::move(upsilon), static_cast<std::ptrdiff_t>(a)), Pro.frame_names()[slot]);
    F.values[slot] = std::move(v);
  }
  return F;
}

DualVerdict oracle_equivalence_dual(const LieAlgebroid& A, const LinearMultivector& P) {
  require_same_bundle(A, P);
  DualVerdict out;
  out.derivation_report = check_gerstenhaber_derivation(A, derivation_from_linear(P));
  out.morphism_report =
      check_morphism_to_line(cotangent_prolongation(A, static_cast<unsigned>(P.k)), multivector_bar_on_frame(A, P));
  out.derivation = out.derivation_report.passed();
  out.morphism = out.morphism_report.passed();
  if (out.derivation != out.morphism && A.verified()) {
    throw OracleDisagreement(std::string("derivation check says ") + (out.derivation ? "pass" : "fail") +
                             ", morphism check says " + (out.morphism ? "pass" : "fail"));
  }
  return out;
}

}  // namespace imcalc
