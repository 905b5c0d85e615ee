#include "imcalc/im_forms.hpp"

#include "imcalc/errors.hpp"
#include "imcalc/prolongation.hpp"

namespace imcalc {

namespace {

std::vector<std::string> coordinate_names(const ChartPtr& c) {
  std::vector<std::string> out;
  for (const auto& x : c->coordinates()) out.push_back(x.name);
  return out;
}

DifferentialForm normalized(const ChartPtr& base, const DifferentialForm& a, std::size_t degree, const char* what) {
  if (!a.is_zero() && a.degree() != degree) {
    throw DomainError(std::string(what) + " has degree " + std::to_string(a.degree()) + ", expected " +
                      std::to_string(degree));
  }
  DifferentialForm out = transfer(a, base);
  if (out.is_zero()) out = zero_form(base, degree);
  return out;
}

DifferentialForm on_bracket(const LieAlgebroid& A, const std::vector<DifferentialForm>& f, std::size_t a,
                            std::size_t b, std::size_t degree) {
  DifferentialForm out = zero_form(A.base(), degree);
  for (std::size_t c = 0; c < A.rank(); ++c) {
    const Polynomial& C = A.structure(a, b, c);
    if (!C.is_zero()) out += C * f[c];
  }
  return out;
}

struct Recorder {
  const LieAlgebroid& A;
  std::vector<std::string> names;
  CheckReport& report;

  void operator()(const std::string& tag, std::vector<std::size_t> frame, const DifferentialForm& residual,
                  const std::string& note = "") {
    if (residual.is_zero()) return;
    Violation v;
    v.tag = tag;
    for (auto i : frame) {
      v.witness.push_back(i + 1);
      v.labels.push_back(A.frame_names()[i]);
    }
    v.residual = residual_of(residual, names, "d");
    v.note = note;
    report.violations.push_back(std::move(v));
  }
};

}  // namespace

IMForm::IMForm(LieAlgebroid A, BundleForms f) : algebroid(std::move(A)), forms(std::move(f)) {
  const std::size_t r = algebroid.rank();
  if (forms.k == 0) throw DomainError("IM forms have degree k >= 1");
  if (forms.mu.size() != r || forms.nu.size() != r) {
    throw DomainError("expected " + std::to_string(r) + " (mu, nu) pairs, got " + std::to_string(forms.mu.size()) +
                      " and " + std::to_string(forms.nu.size()));
  }
  const ChartPtr& base = algebroid.base();
  for (std::size_t a = 0; a < r; ++a) {
    forms.mu[a] = normalized(base, forms.mu[a], forms.k - 1, "mu");
    forms.nu[a] = normalized(base, forms.nu[a], forms.k, "nu");
  }
}

CheckReport check_im_form(const IMForm& im) {
  const LieAlgebroid& A = im.algebroid;
  const std::size_t r = A.rank();
  const std::size_t k = im.forms.k;
  const auto& mu = im.forms.mu;
  const auto& nu = im.forms.nu;
  CheckReport report;
  Recorder record{A, coordinate_names(A.base()), report};
  if (!A.verified()) report.notes.push_back("algebroid axioms not verified");

  std::vector<VectorField> rho;
  std::vector<DifferentialForm> dmu, dnu;
  for (std::size_t a = 0; a < r; ++a) {
    rho.push_back(A.anchor_field(a));
    dmu.push_back(exterior_derivative(mu[a]));
    dnu.push_back(exterior_derivative(nu[a]));
  }

  if (k >= 2) {
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = a; b < r; ++b) record("IM1", {a, b}, contract(rho[a], mu[b]) + contract(rho[b], mu[a]));
  }
  const bool im1 = report.passed("IM1");
  const std::string note = im1 ? "" : "frame-reduction not certified";

  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      DifferentialForm im2 = on_bracket(A, mu, a, b, k - 1) - lie_derivative(rho[a], mu[b]) +
                             contract(rho[b], dmu[a]) + contract(rho[b], nu[a]);
      record("IM2", {a, b}, im2, note);
      DifferentialForm im3 = on_bracket(A, nu, a, b, k) - lie_derivative(rho[a], nu[b]) + contract(rho[b], dnu[a]);
      record("IM3", {a, b}, im3, note);
    }
  }
  if (!report.passed()) return report;

  // Consequences of IM1-IM3 together with the algebroid axioms.
  CheckReport extra;
  Recorder record_extra{A, record.names, extra};
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a; b < r; ++b) record_extra("NU1", {a, b}, contract(rho[a], nu[b]) + contract(rho[b], nu[a]));
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a + 1; b < r; ++b) {
      for (std::size_t c = b + 1; c < r; ++c) {
        auto literal = [&](std::size_t u, std::size_t v, std::size_t w) {
          return contract(rho[w], lie_derivative(rho[v], nu[u]) - lie_derivative(rho[u], nu[v]));
        };
        auto term = [&](std::size_t u, std::size_t v, std::size_t w) {
          return literal(u, v, w) - lie_derivative(rho[w], contract(rho[v], nu[u])) +
                 contract(rho[w], on_bracket(A, nu, u, v, k));
        };
        if (k == 1) record_extra("NU2", {a, b, c}, literal(a, b, c) + literal(b, c, a) + literal(c, a, b));
        record_extra("NU2", {a, b, c},
                     term(a, b, c) + term(b, c, a) + term(c, a, b) +
                         Polynomial::constant(A.base(), Rational(3)) * exterior_derivative(contract(rho[c], contract(rho[b], nu[a]))));
      }
    }
  }
  if (!extra.passed()) {
    if (A.verified()) {
      throw OracleDisagreement("IM conditions hold but " + extra.violations.front().tag + " fails");
    }
    report.append(std::move(extra));
  }
  return report;
}

IMForm im_from_form(const LieAlgebroid& A, const DifferentialForm& eta) {
  const std::size_t k = eta.degree();
  if (k == 0) throw DomainError("im_from_form needs a form of degree >= 1");
  const DifferentialForm e = normalized(A.base(), eta, k, "eta");
  const DifferentialForm de = exterior_derivative(e);
  BundleForms forms{k, {}, {}};
  for (std::size_t a = 0; a < A.rank(); ++a) {
    const VectorField rho = A.anchor_field(a);
    forms.mu.push_back(-contract(rho, e));
    forms.nu.push_back(-contract(rho, de));
  }
  return IMForm(A, std::move(forms));
}

IMForm im_relative(const LieAlgebroid& A, std::vector<DifferentialForm> mu, const DifferentialForm& phi) {
  if (phi.degree() < 2) throw DomainError("relative IM forms need phi of degree >= 2");
  const std::size_t k = phi.degree() - 1;
  const DifferentialForm p = normalized(A.base(), phi, k + 1, "phi");
  const DifferentialForm dp = exterior_derivative(p);
  BundleForms forms{k, std::move(mu), {}};
  for (std::size_t a = 0; a < A.rank(); ++a) {
    const VectorField rho = A.anchor_field(a);
    if (!contract(rho, dp).is_zero()) {
      throw PreconditionError("i_rho(" + A.frame_names()[a] + ") d phi does not vanish");
    }
    forms.nu.push_back(-contract(rho, p));
  }
  return IMForm(A, std::move(forms));
}

OracleVerdict oracle_equivalence(const IMForm& im) {
  OracleVerdict out;
  out.im_report = check_im_form(im);
  const LieAlgebroid P = tangent_prolongation(im.algebroid, static_cast<unsigned>(im.forms.k));
  out.morphism_report = check_morphism_to_line(P, lambda_bar_on_frame(im.algebroid, im.forms));
  out.im = out.im_report.passed();
  out.morphism = out.morphism_report.passed();
  if (out.im != out.morphism && im.algebroid.verified()) {
    throw OracleDisagreement(std::string("IM check says ") + (out.im ? "pass" : "fail") +
                             ", morphism check says " + (out.morphism ? "pass" : "fail"));
  }
  return out;
}

}  // namespace imcalc
