#pragma once

#include <string>
#include <vector>

#include "imcalc/cartan.hpp"
#include "imcalc/report.hpp"

namespace imcalc {

/// Section of the p-th exterior power of an algebroid; slot a is the frame
/// section e_a. Coefficients live on the base chart. Degree 1 gives ordinary
/// sections, degree 0 functions.
using WedgeSection = Alternating<SectionTag>;
using Section = WedgeSection;

/// One structure function C_ab^c with 0-based indices, a != b.
struct StructureEntry {
  std::size_t a;
  std::size_t b;
  std::size_t c;
  Polynomial value;
};

enum class Verification {
  checked,    // check_axioms runs at construction; failure throws PreconditionError
  unchecked,  // accepted as given; downstream oracles treat it as unverified
};

/// Lie algebroid over a chart, given by its anchor rho_a^j and structure
/// functions C_ab^c in a local frame e_1..e_r:
///   rho(e_a) = rho_a^j d/dx^j,   [e_a, e_b] = C_ab^c e_c.
class LieAlgebroid {
 public:
  LieAlgebroid(ChartPtr base, std::vector<std::string> frame, std::vector<std::vector<Polynomial>> anchor,
               const std::vector<StructureEntry>& structure, Verification verification = Verification::checked);

  const ChartPtr& base() const noexcept { return base_; }
  std::size_t dim() const noexcept { return base_->dim(); }
  std::size_t rank() const noexcept { return frame_.size(); }
  const std::vector<std::string>& frame_names() const noexcept { return frame_; }
  std::size_t frame_index(std::string_view name) const;

  /// rho_a^j
  const Polynomial& anchor(std::size_t a, std::size_t j) const { return anchor_[a][j]; }
  /// C_ab^c (antisymmetric in a, b)
  const Polynomial& structure(std::size_t a, std::size_t b, std::size_t c) const { return C_[a][b][c]; }
  /// rho(e_a) as a vector field on the base chart.
  VectorField anchor_field(std::size_t a) const;
  /// [e_a, e_b] as a section.
  Section frame_bracket(std::size_t a, std::size_t b) const;

  /// True when the axioms were verified at construction.
  bool verified() const noexcept { return verified_; }

 private:
  ChartPtr base_;
  std::vector<std::string> frame_;
  std::vector<std::vector<Polynomial>> anchor_;
  std::vector<std::vector<std::vector<Polynomial>>> C_;
  bool verified_ = false;
};

/// Verifies anchor compatibility rho[e_a,e_b] = [rho e_a, rho e_b]
/// (tag AXIOM_ANCHOR, witness (a,b,j)) and the Jacobi identity on frame
/// triples (tag AXIOM_JACOBI, witness (a,b,c,e)). The Jacobi residual is
/// the e-component of [e_a,[e_b,e_c]] + [e_b,[e_c,e_a]] + [e_c,[e_a,e_b]].
CheckReport check_axioms(const LieAlgebroid& A);

Section zero_section(const LieAlgebroid& A, std::size_t degree = 1);
Section frame_section(const LieAlgebroid& A, std::size_t a);
Section make_section(const LieAlgebroid& A, const std::vector<Polynomial>& components);
Polynomial section_component(const Section& u, std::size_t a);

/// [u,v]^c = u^a v^b C_ab^c + rho(u)(v^c) - rho(v)(u^c).
Section bracket_sections(const LieAlgebroid& A, const Section& u, const Section& v);
/// rho(u) = u^a rho_a^j d/dx^j.
VectorField anchor_apply(const LieAlgebroid& A, const Section& u);

/// Cotangent algebroid of a bivector pi on its chart, in the frame of
/// coordinate differentials: rho(dx^a) = pi^{aj} d/dx^j and
/// [dx^a, dx^b] = (d_c pi^{ab}) dx^c. This is a Lie algebroid iff
/// [pi, pi] = 0. Frame names default to "e1".."en".
LieAlgebroid koszul_algebroid(const Multivector& pi, Verification verification = Verification::checked,
                              std::vector<std::string> frame = {});

/// A fibrewise-linear function on an algebroid, stored through its values on
/// the frame. Values live on the algebroid's base chart.
struct FiberFunctional {
  std::vector<Polynomial> values;

  const Polynomial& at(std::size_t a) const { return values.at(a); }
  const Polynomial& at(const LieAlgebroid& A, std::string_view name) const { return values.at(A.frame_index(name)); }
};

/// Checks that F : A -> R is a Lie algebroid morphism to the trivial
/// algebroid, i.e. F([U,V]) = rho(U)F(V) - rho(V)F(U), on frame pairs U < V
/// (tag MORPHISM). The condition is tensorial in U and V, so frame pairs
/// suffice.
CheckReport check_morphism_to_line(const LieAlgebroid& A, const FiberFunctional& F);

}  // namespace imcalc
