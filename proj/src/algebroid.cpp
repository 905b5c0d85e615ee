#include "imcalc/algebroid.hpp"

#include <set>
#include <tuple>

#include "imcalc/errors.hpp"

namespace imcalc {

LieAlgebroid::LieAlgebroid(ChartPtr base, std::vector<std::string> frame, std::vector<std::vector<Polynomial>> anchor,
                           const std::vector<StructureEntry>& structure, Verification verification)
    : base_(std::move(base)), frame_(std::move(frame)), anchor_(std::move(anchor)) {
  if (!base_) throw DomainError("algebroid needs a base chart");
  const std::size_t r = frame_.size();
  const std::size_t n = base_->dim();
  std::set<std::string> seen;
  for (const auto& name : frame_) {
    if (name.empty() || !seen.insert(name).second) throw DomainError("frame names must be non-empty and unique");
  }
  if (anchor_.size() != r) throw DomainError("anchor must have one row per frame section");
  for (auto& row : anchor_) {
    if (row.size() != n) throw DomainError("anchor row length must equal the base dimension");
    for (auto& p : row) p = p.embed(base_);
  }
  const Polynomial zero(base_);
  C_.assign(r, std::vector<std::vector<Polynomial>>(r, std::vector<Polynomial>(r, zero)));
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> given;
  for (const auto& e : structure) {
    if (e.a >= r || e.b >= r || e.c >= r) throw DomainError("structure index out of range");
    if (e.a == e.b) {
      if (!e.value.is_zero()) throw DomainError("structure functions must vanish for a == b");
      continue;
    }
    const auto key = std::make_tuple(std::min(e.a, e.b), std::max(e.a, e.b), e.c);
    if (!given.insert(key).second) throw DomainError("structure function given twice for the same pair");
    const Polynomial v = e.value.embed(base_);
    C_[e.a][e.b][e.c] += v;
    C_[e.b][e.a][e.c] -= v;
  }
  if (verification == Verification::checked) {
    auto report = check_axioms(*this);
    if (!report.passed()) {
      const auto& v = report.violations.front();
      throw PreconditionError("algebroid fails " + v.tag + ": residual " + render_residual(v.residual));
    }
    verified_ = true;
  }
}

std::size_t LieAlgebroid::frame_index(std::string_view name) const {
  for (std::size_t a = 0; a < frame_.size(); ++a) {
    if (frame_[a] == name) return a;
  }
  throw DomainError("unknown frame section '" + std::string(name) + "'");
}

VectorField LieAlgebroid::anchor_field(std::size_t a) const { return vector_field(base_, anchor_.at(a)); }

Section LieAlgebroid::frame_bracket(std::size_t a, std::size_t b) const {
  Section out(base_, rank(), 1);
  for (std::size_t c = 0; c < rank(); ++c) out.add_term({static_cast<std::uint16_t>(c)}, C_[a][b][c]);
  return out;
}

CheckReport check_axioms(const LieAlgebroid& A) {
  CheckReport report;
  const std::size_t r = A.rank();
  const std::size_t n = A.dim();
  const auto& names = A.frame_names();
  std::vector<VectorField> rho;
  for (std::size_t a = 0; a < r; ++a) rho.push_back(A.anchor_field(a));

  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a + 1; b < r; ++b) {
      for (std::size_t j = 0; j < n; ++j) {
        Polynomial res = apply(rho[a], A.anchor(b, j)) - apply(rho[b], A.anchor(a, j));
        for (std::size_t c = 0; c < r; ++c) res -= A.structure(a, b, c) * A.anchor(c, j);
        if (res.is_zero()) continue;
        report.violations.push_back({"AXIOM_ANCHOR",
                                     {a + 1, b + 1, j + 1},
                                     {names[a], names[b], A.base()->coordinate(j).name},
                                     residual_of(res),
                                     {}});
      }
    }
  }

  // sum over cyclic (a,b,c) of C_bc^d C_ad^e + rho_a(C_bc^e)
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a + 1; b < r; ++b) {
      for (std::size_t c = b + 1; c < r; ++c) {
        const std::size_t cyc[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
        for (std::size_t e = 0; e < r; ++e) {
          Polynomial res(A.base());
          for (const auto& t : cyc) {
            for (std::size_t d = 0; d < r; ++d) res += A.structure(t[1], t[2], d) * A.structure(t[0], d, e);
            res += apply(rho[t[0]], A.structure(t[1], t[2], e));
          }
          if (res.is_zero()) continue;
          report.violations.push_back({"AXIOM_JACOBI",
                                       {a + 1, b + 1, c + 1, e + 1},
                                       {names[a], names[b], names[c], names[e]},
                                       residual_of(res),
                                       {}});
        }
      }
    }
  }
  return report;
}

Section zero_section(const LieAlgebroid& A, std::size_t degree) { return Section(A.base(), A.rank(), degree); }

Section frame_section(const LieAlgebroid& A, std::size_t a) {
  Section out(A.base(), A.rank(), 1);
  out.add_term({static_cast<std::uint16_t>(a)}, Polynomial::constant(A.base(), Rational(1)));
  return out;
}

Section make_section(const LieAlgebroid& A, const std::vector<Polynomial>& components) {
  if (components.size() != A.rank()) throw DomainError("section needs one component per frame section");
  Section out(A.base(), A.rank(), 1);
  for (std::size_t a = 0; a < components.size(); ++a) {
    out.add_term({static_cast<std::uint16_t>(a)}, components[a].embed(A.base()));
  }
  return out;
}

Polynomial section_component(const Section& u, std::size_t a) {
  if (u.degree() != 1) throw DomainError("component of a section that is not of degree 1");
  return u.coefficient({static_cast<std::uint16_t>(a)});
}

namespace {

void require_sections(const LieAlgebroid& A, const Section& u) {
  if (u.degree() != 1 || u.slots() != A.rank()) throw DomainError("expected a degree-1 section of the algebroid");
  if (u.chart() && !same_chart(u.chart(), A.base())) throw ChartError("section lives on a different chart");
}

}  // namespace

VectorField anchor_apply(const LieAlgebroid& A, const Section& u) {
  require_sections(A, u);
  VectorField out = zero_multivector(A.base(), 1);
  for (const auto& [idx, c] : u.coefficients()) out += c * A.anchor_field(idx[0]);
  return out;
}

Section bracket_sections(const LieAlgebroid& A, const Section& u, const Section& v) {
  require_sections(A, u);
  require_sections(A, v);
  const std::size_t r = A.rank();
  const VectorField ru = anchor_apply(A, u);
  const VectorField rv = anchor_apply(A, v);
  Section out(A.base(), r, 1);
  for (std::size_t c = 0; c < r; ++c) {
    Polynomial w = apply(ru, section_component(v, c)) - apply(rv, section_component(u, c));
    for (const auto& [ia, ua] : u.coefficients()) {
      for (const auto& [ib, vb] : v.coefficients()) w += ua * vb * A.structure(ia[0], ib[0], c);
    }
    out.add_term({static_cast<std::uint16_t>(c)}, w);
  }
  return out;
}

LieAlgebroid koszul_algebroid(const Multivector& pi, Verification verification, std::vector<std::string> frame) {
  if (pi.degree() != 2) throw DomainError("Koszul algebroid needs a bivector");
  const auto& chart = pi.chart();
  const std::size_t n = chart->dim();
  if (frame.empty()) {
    for (std::size_t a = 1; a <= n; ++a) frame.push_back("e" + std::to_string(a));
  }
  std::vector<std::vector<Polynomial>> anchor(n, std::vector<Polynomial>(n, Polynomial(chart)));
  std::vector<StructureEntry> structure;
  for (std::uint16_t a = 0; a < n; ++a) {
    for (std::uint16_t j = 0; j < n; ++j) anchor[a][j] = pi.coefficient({a, j});
    for (std::uint16_t b = a + 1; b < n; ++b) {
      const Polynomial p = pi.coefficient({a, b});
      for (std::size_t c = 0; c < n; ++c) {
        Polynomial v = p.diff(c);
        if (!v.is_zero()) structure.push_back({a, b, c, v});
      }
    }
  }
  return LieAlgebroid(chart, std::move(frame), std::move(anchor), structure, verification);
}

CheckReport check_morphism_to_line(const LieAlgebroid& A, const FiberFunctional& F) {
  const std::size_t r = A.rank();
  if (F.values.size() != r) throw DomainError("fibre functional must have one value per frame section");
  std::vector<Polynomial> values;
  for (const auto& v : F.values) values.push_back(v.embed(A.base()));
  CheckReport report;
  const auto& names = A.frame_names();
  for (std::size_t U = 0; U < r; ++U) {
    const VectorField rU = A.anchor_field(U);
    for (std::size_t V = U + 1; V < r; ++V) {
      Polynomial res = apply(A.anchor_field(V), values[U]) - apply(rU, values[V]);
      for (std::size_t c = 0; c < r; ++c) res += A.structure(U, V, c) * values[c];
      if (res.is_zero()) continue;
      report.violations.push_back({"MORPHISM", {U + 1, V + 1}, {names[U], names[V]}, residual_of(res), {}});
    }
  }
  return report;
}

}  // namespace imcalc
