#include "imcalc/cli/run.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "imcalc/dirac.hpp"
#include "imcalc/linear_multivector.hpp"
#include "imcalc/prolongation.hpp"
#include "imcalc/weil.hpp"

namespace imcalc::cli {

using nlohmann::ordered_json;

namespace {

ordered_json violation_json(const Violation& v) {
  ordered_json residual = ordered_json::array();
  for (const auto& c : v.residual) residual.push_back({{"basis", c.basis}, {"coefficient", c.coefficient.to_string()}});
  ordered_json out;
  out["witness"] = v.witness;
  out["labels"] = v.labels;
  out["residual"] = render_residual(v.residual);
  out["components"] = std::move(residual);
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

class ReportBuilder {
 public:
  /// One entry per tag in `tags`, then one per further tag found in the
  /// report, in order of first appearance.
  void add(const CheckReport& report, const std::vector<std::string>& tags, const std::string& scope = "") {
    std::vector<std::string> all = tags;
    for (const auto& v : report.violations) {
      if (std::find(all.begin(), all.end(), v.tag) == all.end()) all.push_back(v.tag);
    }
    for (const auto& tag : all) {
      ordered_json check;
      check["tag"] = tag;
      if (!scope.empty()) check["scope"] = scope;
      ordered_json violations = ordered_json::array();
      for (const Violation* v : report.with_tag(tag)) violations.push_back(violation_json(*v));
      check["passed"] = violations.empty();
      check["violations"] = std::move(violations);
      passed_ = passed_ && check["passed"].get<bool>();
      checks_.push_back(std::move(check));
    }
    for (const auto& n : report.notes) note(scope.empty() ? n : scope + ": " + n);
  }

  void note(const std::string& n) {
    if (std::find(notes_.begin(), notes_.end(), n) == notes_.end()) notes_.push_back(n);
  }
  void fail() { passed_ = false; }

  ordered_json checks() const { return checks_; }
  const std::vector<std::string>& notes() const { return notes_; }
  bool passed() const { return passed_; }

 private:
  ordered_json checks_ = ordered_json::array();
  std::vector<std::string> notes_;
  bool passed_ = true;
};

// An OracleDisagreement on an unverified algebroid is a statement about the
// input, not a defect; it is reported as a failed agreement.
void record_agreement(ordered_json& oracle, bool agree, bool verified, const std::string& what, ReportBuilder& b) {
  oracle["agree"] = agree;
  if (agree) return;
  if (verified) throw OracleDisagreement(what);
  b.note("oracles disagree on an unverified algebroid");
  b.fail();
}

BundleForms im_forms_of(const Problem& p, const LieAlgebroid& A) {
  if (p.kind == CandidateKind::im_form) return p.forms;
  if (p.kind == CandidateKind::weil) return decompose(total_chart(A), p.linear);
  throw DocumentError("mode im-form needs an im_form or weil candidate");
}

DifferentialForm linear_form_of(const Problem& p, const LieAlgebroid& A) {
  if (p.kind == CandidateKind::weil) return p.linear;
  if (p.kind == CandidateKind::im_form) return compose(total_chart(A), p.forms);
  throw DocumentError("mode weil needs a weil or im_form candidate");
}

void run_axioms(const LieAlgebroid& A, std::size_t k, ReportBuilder& b) {
  b.add(check_axioms(A), {"AXIOM_ANCHOR", "AXIOM_JACOBI"});
  if (k == 0) return;
  if (!A.verified()) {
    b.note("prolongations skipped: algebroid axioms fail");
    return;
  }
  for (unsigned m = 1; m <= k; ++m) {
    const std::string suffix = " k=" + std::to_string(m);
    b.add(check_axioms(tangent_prolongation(A, m)), {"AXIOM_ANCHOR", "AXIOM_JACOBI"}, "tangent_prolongation" + suffix);
    b.add(check_axioms(cotangent_prolongation(A, m)), {"AXIOM_ANCHOR", "AXIOM_JACOBI"},
          "cotangent_prolongation" + suffix);
  }
}

void run_im_form(const Problem& p, const LieAlgebroid& A, const RunOptions& o, bool oracle, ordered_json& out,
                 ReportBuilder& b) {
  const IMForm im(A, im_forms_of(p, A));
  std::vector<std::string> tags;
  if (im.forms.k >= 2) tags.push_back("IM1");
  tags.insert(tags.end(), {"IM2", "IM3"});

  if (oracle) {
    const OracleVerdict v = oracle_equivalence(im);
    b.add(v.im_report, tags);
    b.add(v.morphism_report, {"MORPHISM"});
    ordered_json block;
    block["im"] = v.im;
    block["morphism"] = v.morphism;
    record_agreement(block, v.im == v.morphism, A.verified(), "IM conditions and morphism verdicts differ", b);
    out = std::move(block);
  } else {
    b.add(check_im_form(im), tags);
  }

  const bool dirac = o.dirac || p.dirac || !o.samples.empty() || !p.samples.empty();
  if (dirac) {
    if (im.forms.k != 2) {
      b.note("dirac checks need k = 2; skipped");
      return;
    }
    const DiracCandidate D = dirac_from_im(im);
    const auto& points = !o.samples.empty() ? o.samples : !p.samples.empty() ? p.samples : default_sample_points(A.dim());
    const LagrangianReport L = check_lagrangian(D, points);
    b.add(L.report, {"ISOTROPY", "LAGRANGIAN"}, "dirac");
  }
}

void run_multivector(const Problem& p, const LieAlgebroid& A, bool oracle, ordered_json& out, ReportBuilder& b) {
  if (p.kind != CandidateKind::multivector) throw DocumentError("mode multivector needs a multivector candidate");
  const LinearMultivector P = linear_multivector(total_chart(A), p.multivector);
  if (oracle) {
    const DualVerdict v = oracle_equivalence_dual(A, P);
    b.add(v.derivation_report, {"R1", "R2", "R3"});
    b.add(v.morphism_report, {"MORPHISM"});
    ordered_json block;
    block["derivation"] = v.derivation;
    block["morphism"] = v.morphism;
    record_agreement(block, v.derivation == v.morphism, A.verified(), "derivation and morphism verdicts differ", b);
    out = std::move(block);
  } else {
    b.add(check_gerstenhaber_derivation(A, derivation_from_linear(P)), {"R1", "R2", "R3"});
  }
}

void run_weil(const Problem& p, const LieAlgebroid& A, bool oracle, ordered_json& out, ReportBuilder& b) {
  const DifferentialForm L = linear_form_of(p, A);
  const CheckReport dh = check_dh_closed(A, psi(A, L));
  b.add(dh, {"DH0", "DH1", "DH2"});
  b.add(check_psi_properties(A, L), {"PSI_D", "PSI_IM"});
  if (!oracle) return;

  const OracleVerdict v = oracle_equivalence(IMForm(A, decompose(total_chart(A), L)));
  b.add(v.morphism_report, {"MORPHISM"});
  ordered_json block;
  block["im"] = v.im;
  block["morphism"] = v.morphism;
  block["dh_closed"] = dh.passed();
  record_agreement(block, v.im == v.morphism && v.im == dh.passed(), A.verified(),
                   "IM, morphism and d^h verdicts differ", b);
  out = std::move(block);
}

}  // namespace

ordered_json verify(const Problem& problem, const RunOptions& options) {
  const std::string mode = options.mode.empty() ? problem.mode : options.mode;
  if (mode != "axioms" && mode != "im-form" && mode != "multivector" && mode != "weil") {
    throw DocumentError("unknown mode \"" + mode + "\"");
  }
  if (mode != "axioms" && options.k != 0 && problem.kind != CandidateKind::none && options.k != problem.k) {
    throw DocumentError("--k " + std::to_string(options.k) + " does not match the candidate degree " +
                        std::to_string(problem.k));
  }
  const bool oracle = options.oracle < 0 ? problem.oracle : options.oracle != 0;

  const LieAlgebroid unchecked(problem.base, problem.frame, problem.anchor, problem.structure,
                               Verification::unchecked);
  const bool axioms_hold = check_axioms(unchecked).passed();
  const LieAlgebroid A = axioms_hold ? LieAlgebroid(problem.base, problem.frame, problem.anchor, problem.structure,
                                                    Verification::checked)
                                     : unchecked;

  ordered_json out;
  out["name"] = problem.name;
  out["mode"] = mode;
  std::size_t k = problem.k;
  if (mode == "axioms") k = options.k != 0 ? options.k : problem.option_k;
  out["k"] = k;
  out["algebroid"] = {{"dim", A.dim()}, {"rank", A.rank()}, {"verified", A.verified()}};

  ReportBuilder b;
  ordered_json oracle_block;
  if (mode == "axioms") {
    run_axioms(A, k, b);
  } else {
    if (!axioms_hold) {
      b.add(check_axioms(A), {"AXIOM_ANCHOR", "AXIOM_JACOBI"});
      b.note("algebroid axioms fail; candidate checks run on the unverified algebroid");
    }
    if (mode == "im-form") run_im_form(problem, A, options, oracle, oracle_block, b);
    if (mode == "multivector") run_multivector(problem, A, oracle, oracle_block, b);
    if (mode == "weil") run_weil(problem, A, oracle, oracle_block, b);
  }

  out["checks"] = b.checks();
  if (!oracle_block.is_null()) out["oracle"] = std::move(oracle_block);
  out["notes"] = b.notes();
  out["passed"] = b.passed();
  return out;
}

std::string render_text(const ordered_json& report) {
  std::ostringstream os;
  os << "problem " << report.value("name", std::string()) << " (mode " << report.at("mode").get<std::string>()
     << ", k=" << report.at("k").get<std::size_t>() << ", algebroid "
     << (report.at("algebroid").at("verified").get<bool>() ? "verified" : "unverified") << ")\n";
  for (const auto& check : report.at("checks")) {
    const std::string head = (check.at("passed").get<bool>() ? "PASS " : "FAIL ") +
                             check.at("tag").get<std::string>() +
                             (check.contains("scope") ? " [" + check.at("scope").get<std::string>() + "]" : "");
    if (check.at("violations").empty()) {
      os << head << "\n";
      continue;
    }
    for (const auto& v : check.at("violations")) {
      os << head << " (";
      const auto& labels = v.at("labels");
      for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? "," : "") << labels[i].get<std::string>();
      os << "): " << v.at("residual").get<std::string>();
      if (v.contains("note")) os << "  [" << v.at("note").get<std::string>() << "]";
      os << "\n";
    }
  }
  if (report.contains("oracle")) {
    os << "ORACLE";
    for (const auto& [key, value] : report.at("oracle").items()) os << " " << key << "=" << (value.get<bool>() ? "yes" : "no");
    os << "\n";
  }
  for (const auto& n : report.at("notes")) os << "NOTE " << n.get<std::string>() << "\n";
  os << "RESULT " << (report.at("passed").get<bool>() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Check Lie algebroid structures and IM candidates given as a JSON problem document.", "verify"};
  std::string input;
  std::size_t k = 0;
  std::string mode;
  std::string oracle;
  std::string samples;
  std::string format = "json";
  bool dirac = false;
  app.add_option("--input", input, "problem document")->required();
  app.add_option("--k", k, "candidate degree, or prolongation degree in axioms mode");
  app.add_option("--mode", mode, "suite to run")->check(CLI::IsMember({"im-form", "multivector", "weil", "axioms"}));
  app.add_option("--oracle", oracle, "run the independent oracle")->check(CLI::IsMember({"on", "off"}));
  app.add_option("--samples", samples, "JSON list of base points for the Dirac checks");
  app.add_option("--report", format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--dirac", dirac, "add Dirac checks for k = 2 im-form runs");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_pass : exit_invalid;
  }

  try {
    const Problem problem = parse_problem_text(read_file(input));
    RunOptions options;
    options.mode = mode;
    options.k = k;
    options.oracle = oracle.empty() ? -1 : oracle == "on";
    options.dirac = dirac;
    if (!samples.empty()) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(read_file(samples));
      } catch (const nlohmann::json::exception& e) {
        throw DocumentError(std::string("invalid samples file: ") + e.what());
      }
      options.samples = parse_samples(doc, problem.base->dim());
    }
    const ordered_json report = verify(problem, options);
    out << (format == "text" ? render_text(report) : report.dump(2) + "\n");
    return report.at("passed").get<bool>() ? exit_pass : exit_fail;
  } catch (const OracleDisagreement& e) {
    err << "verify: oracle disagreement: " << e.what() << "\n";
    return exit_disagreement;
  } catch (const Error& e) {
    err << "verify: " << e.what() << "\n";
    return exit_invalid;
  } catch (const nlohmann::json::exception& e) {
    err << "verify: " << e.what() << "\n";
    return exit_invalid;
  }
}

}  // namespace imcalc::cli
