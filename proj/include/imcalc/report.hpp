#pragma once

#include <string>
#include <vector>

#include "imcalc/alternating.hpp"
#include "imcalc/polynomial.hpp"

namespace imcalc {

/// One non-zero component of a residual: the basis element it multiplies
/// ("" for scalars, "dx1^dx2" for forms, "e1^e3" for bundle sections).
struct ResidualComponent {
  std::string basis;
  Polynomial coefficient;
};

struct Violation {
  std::string tag;                   // AXIOM_ANCHOR, IM2, MORPHISM, R3, ...
  std::vector<std::size_t> witness;  // 1-based frame / coordinate indices
  std::vector<std::string> labels;   // names of the witness entries
  std::vector<ResidualComponent> residual;
  std::string note;
};

/// Outcome of a condition check. passed() iff there are no violations.
/// Residuals list only non-zero components; verdicts taken at sample points
/// carry an empty residual and say why in the note.
struct CheckReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool passed() const noexcept { return violations.empty(); }
  void append(CheckReport other);
  /// Violations carrying `tag`.
  std::vector<const Violation*> with_tag(const std::string& tag) const;
  bool passed(const std::string& tag) const { return with_tag(tag).empty(); }
};

/// Basis-element labels for the residual helpers below.
std::string wedge_label(const IndexTuple& idx, const std::vector<std::string>& names, const std::string& prefix);

std::vector<ResidualComponent> residual_of(const Polynomial& p);
/// Components of a form, labelled with "d" + coordinate names.
template <class Tag>
std::vector<ResidualComponent> residual_of(const Alternating<Tag>& a, const std::vector<std::string>& names,
                                           const std::string& prefix) {
  std::vector<ResidualComponent> out;
  for (const auto& [idx, c] : a.coefficients()) out.push_back({wedge_label(idx, names, prefix), c});
  return out;
}

/// Renders residual components as "c1*basis1 + c2*basis2".
std::string render_residual(const std::vector<ResidualComponent>& residual);

}  // namespace imcalc
