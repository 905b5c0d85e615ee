#include "imcalc/report.hpp"

namespace imcalc {

void CheckReport::append(CheckReport other) {
  for (auto& v : other.violations) violations.push_back(std::move(v));
  for (auto& n : other.notes) notes.push_back(std::move(n));
}

std::vector<const Violation*> CheckReport::with_tag(const std::string& tag) const {
  std::vector<const Violation*> out;
  for (const auto& v : violations) {
    if (v.tag == tag) out.push_back(&v);
  }
  return out;
}

std::string wedge_label(const IndexTuple& idx, const std::vector<std::string>& names, const std::string& prefix) {
  std::string out;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) out += "^";
    out += prefix + names.at(idx[i]);
  }
  return out;
}

std::vector<ResidualComponent> residual_of(const Polynomial& p) {
  if (p.is_zero()) return {};
  return {{"", p}};
}

std::string render_residual(const std::vector<ResidualComponent>& residual) {
  if (residual.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < residual.size(); ++i) {
    const auto& r = residual[i];
    if (i) out += " + ";
    if (r.basis.empty()) {
      out += r.coefficient.to_string();
    } else {
      out += "(" + r.coefficient.to_string() + ")*" + r.basis;
    }
  }
  return out;
}

}  // namespace imcalc
