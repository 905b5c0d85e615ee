#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "imcalc/cli/document.hpp"

namespace imcalc::cli {

enum ExitCode : int {
  exit_pass = 0,          // every selected check passed
  exit_fail = 1,          // a mathematical condition failed; the report has witnesses
  exit_invalid = 2,       // unreadable, unparsable or inconsistent input
  exit_disagreement = 3,  // two independent routes disagreed on a verified algebroid
};

struct RunOptions {
  std::string mode;      // empty: from the document
  std::size_t k = 0;     // 0: from the candidate
  int oracle = -1;       // -1: from the document
  bool dirac = false;
  std::vector<std::vector<Rational>> samples;
};

/// Runs the selected suite. The report lists checks in a fixed order and
/// carries no timestamps, so identical input gives identical output.
/// Throws OracleDisagreement on a defect.
nlohmann::ordered_json verify(const Problem& problem, const RunOptions& options);

/// Human-readable rendering of a report.
std::string render_text(const nlohmann::ordered_json& report);

/// Entry point of the verify tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace imcalc::cli
