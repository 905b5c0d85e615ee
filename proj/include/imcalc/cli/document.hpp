#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "imcalc/errors.hpp"
#include "imcalc/linear_forms.hpp"

namespace imcalc::cli {

/// Structurally invalid problem document (missing field, wrong type, index
/// out of range). Expression errors surface as ParseError / ChartError.
class DocumentError : public Error {
 public:
  using Error::Error;
};

enum class CandidateKind { none, im_form, multivector, weil };

/// A parsed problem document:
///   {"name", "base": [coords], "rank", "frame": [names], "anchor": r x n
///    expressions, "structure": [[a, b, c, expr], ...] with frame names,
///    "candidate": {...},
///    "options": {"mode", "k", "oracle", "dirac", "samples": [[x1, ..], ..]}}
/// Candidates:
///   {"type": "im_form", "k", "mu": [form], "nu": [form]}   forms on the base
///   {"type": "multivector", "k", "terms": multivector}      on the total chart
///   {"type": "weil", "k", "form": form}                     on the total chart
/// A form is an object {"dx1^dx2": expr, ...} ("1" for the scalar part), a
/// multivector {"d/du_e1^d/dx1": expr, ...}. Total-chart fibre coordinates
/// are "u_<frame name>".
struct Problem {
  std::string name;
  ChartPtr base;
  std::vector<std::string> frame;
  std::vector<std::vector<Polynomial>> anchor;
  std::vector<StructureEntry> structure;

  CandidateKind kind = CandidateKind::none;
  std::size_t k = 0;
  BundleForms forms;           // im_form
  Multivector multivector;     // multivector
  DifferentialForm linear;     // weil

  std::string mode;  // from options, or implied by the candidate
  std::size_t option_k = 0;  // prolongation degree in axioms mode
  bool oracle = true;
  bool dirac = false;
  std::vector<std::vector<Rational>> samples;

  TotalChart total() const { return total_chart(base, frame); }
};

Problem parse_problem(const nlohmann::json& doc);
/// Parses JSON text; syntax errors become DocumentError.
Problem parse_problem_text(const std::string& text);

/// Sample points: a JSON array of arrays of rational strings or integers.
std::vector<std::vector<Rational>> parse_samples(const nlohmann::json& doc, std::size_t dim);

}  // namespace imcalc::cli
