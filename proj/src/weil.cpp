#include "imcalc/weil.hpp"

#include "imcalc/errors.hpp"

namespace imcalc {

namespace {

void require_shape(const W1k& w, std::size_t r) {
  if (w.k == 0) throw DomainError("W^{1,k} needs k >= 1");
  if (w.comp0.size() != r || w.comp1.size() != r) {
    throw DomainError("W^{1,k} element has " + std::to_string(w.comp0.size()) + " and " +
                      std::to_string(w.comp1.size()) + " components, expected " + std::to_string(r));
  }
}

std::vector<std::string> coordinate_names(const ChartPtr& c) {
  std::vector<std::string> out;
  for (const auto& x : c->coordinates()) out.push_back(x.name);
  return out;
}

using Table = std::vector<std::vector<DifferentialForm>>;

Table table(const ChartPtr& base, std::size_t r, std::size_t degree) {
  return Table(r, std::vector<DifferentialForm>(r, zero_form(base, degree)));
}

bool all_zero(const Table& t) {
  for (const auto& row : t)
    for (const auto& f : row)
      if (!f.is_zero()) return false;
  return true;
}

}  // namespace

DifferentialForm w1k_comp0(const W1k& w, const Section& u) {
  const ChartPtr& base = u.chart();
  DifferentialForm out = zero_form(base, w.k);
  for (std::size_t a = 0; a < w.comp0.size(); ++a) {
    const Polynomial f = section_component(u, a);
    if (f.is_zero()) continue;
    out += f * w.comp0[a] - wedge(exterior_derivative(function_form(f)), w.comp1[a]);
  }
  return out;
}

DifferentialForm w1k_comp1(const W1k& w, const Section& u) {
  DifferentialForm out = zero_form(u.chart(), w.k - 1);
  for (std::size_t a = 0; a < w.comp1.size(); ++a) out += section_component(u, a) * w.comp1[a];
  return out;
}

bool W2kComponents::is_zero() const { return all_zero(comp0) && all_zero(comp1) && all_zero(comp2); }

W1k psi(const BundleForms& forms) {
  W1k w{forms.k, {}, {}};
  for (std::size_t a = 0; a < forms.mu.size(); ++a) {
    w.comp0.push_back(exterior_derivative(forms.mu[a]) + forms.nu[a]);
    w.comp1.push_back(-forms.mu[a]);
  }
  return w;
}

W1k psi(const LieAlgebroid& A, const DifferentialForm& L) { return psi(decompose(total_chart(A), L)); }

BundleForms psi_inverse(const W1k& w) {
  BundleForms out{w.k, {}, {}};
  for (std::size_t a = 0; a < w.comp0.size(); ++a) {
    out.mu.push_back(-w.comp1[a]);
    out.nu.push_back(w.comp0[a] - exterior_derivative(out.mu.back()));
  }
  return out;
}

W1k bundle_map_element(std::size_t k, const std::vector<DifferentialForm>& mu) {
  W1k w{k, mu, {}};
  for (const auto& m : mu) w.comp1.push_back(zero_form(m.chart(), k - 1));
  return w;
}

W1k dv_mu(std::size_t k, const std::vector<DifferentialForm>& mu) {
  W1k w{k + 1, {}, mu};
  for (const auto& m : mu) {
    if (!m.is_zero() && m.degree() != k) throw DomainError("dv_mu: bundle map values must have degree k");
    w.comp0.push_back(-exterior_derivative(m));
  }
  return w;
}

W2kComponents dh_w1k(const LieAlgebroid& A, const W1k& w) {
  const std::size_t r = A.rank();
  require_shape(w, r);
  const ChartPtr& base = A.base();
  const std::size_t k = w.k;
  std::vector<VectorField> rho;
  for (std::size_t a = 0; a < r; ++a) rho.push_back(A.anchor_field(a));

  W2kComponents out{table(base, r, k), table(base, r, k - 1), table(base, r, k - 1)};
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      const Section ab = A.frame_bracket(a, b);
      out.comp0[a][b] = -w1k_comp0(w, ab) + lie_derivative(rho[a], w.comp0[b]) - lie_derivative(rho[b], w.comp0[a]);
      out.comp1[a][b] = lie_derivative(rho[a], w.comp1[b]) - w1k_comp1(w, ab) + contract(rho[b], w.comp0[a]);
      // polarization of -i_{rho u} w_1(u)
      out.comp2[a][b] = Polynomial::constant(base, Rational(-1, 2)) *
                        (contract(rho[a], w.comp1[b]) + contract(rho[b], w.comp1[a]));
    }
  }
  return out;
}

CheckReport check_dh_closed(const LieAlgebroid& A, const W1k& w) {
  const W2kComponents c = dh_w1k(A, w);
  const auto names = coordinate_names(A.base());
  const auto& frame = A.frame_names();
  CheckReport report;
  auto record = [&](const char* tag, std::size_t a, std::size_t b, const DifferentialForm& f) {
    if (f.is_zero()) return;
    report.violations.push_back({tag, {a + 1, b + 1}, {frame[a], frame[b]}, residual_of(f, names, "d"), {}});
  };
  const std::size_t r = A.rank();
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      if (a < b) record("DH0", a, b, c.comp0[a][b]);
      record("DH1", a, b, c.comp1[a][b]);
      if (a <= b) record("DH2", a, b, c.comp2[a][b]);
    }
  }
  return report;
}

CheckReport check_psi_properties(const LieAlgebroid& A, const DifferentialForm& L) {
  const TotalChart E = total_chart(A);
  const BundleForms forms = decompose(E, L);
  const W1k lhs = psi(decompose(E, exterior_derivative(transfer(L, E.chart))));
  const W1k rhs = dv_mu(forms.k, forms.nu);
  const auto names = coordinate_names(A.base());
  const auto& frame = A.frame_names();

  CheckReport report;
  for (std::size_t a = 0; a < A.rank(); ++a) {
    const DifferentialForm d0 = lhs.comp0[a] + rhs.comp0[a];
    const DifferentialForm d1 = lhs.comp1[a] + rhs.comp1[a];
    if (!d0.is_zero()) report.violations.push_back({"PSI_D", {a + 1}, {frame[a]}, residual_of(d0, names, "d"), "comp0"});
    if (!d1.is_zero()) report.violations.push_back({"PSI_D", {a + 1}, {frame[a]}, residual_of(d1, names, "d"), "comp1"});
  }

  const bool im = check_im_form(IMForm(A, forms)).passed();
  const bool closed = check_dh_closed(A, psi(forms)).passed();
  report.notes.push_back(std::string("IM conditions hold: ") + (im ? "yes" : "no"));
  report.notes.push_back(std::string("d^h psi(L) = 0: ") + (closed ? "yes" : "no"));
  if (im != closed) report.violations.push_back({"PSI_IM", {}, {}, {}, "verdicts differ"});
  return report;
}

}  // namespace imcalc
