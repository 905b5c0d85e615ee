#include "imcalc/cli/document.hpp"

#include <set>

namespace imcalc::cli {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw DocumentError(std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

std::string expression_text(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw DocumentError(where + ": expected an expression string or integer");
}

Polynomial expression(const json& v, const ChartPtr& chart, const std::string& where) {
  const std::string text = expression_text(v, where);
  try {
    return parse_polynomial(text, chart);
  } catch (const ParseError& e) {
    throw DocumentError(where + " \"" + text + "\": " + e.what());
  } catch (const ChartError& e) {
    throw DocumentError(where + " \"" + text + "\": " + e.what());
  }
}

std::size_t count(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw DocumentError(std::string(what) + " must be a non-negative integer");
  return v.get<std::size_t>();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

// Slot indices of a basis label whose factors are `prefix` + coordinate name.
IndexTuple basis_slots(const std::string& label, const std::string& prefix, const ChartPtr& chart) {
  IndexTuple idx;
  if (label == "1") return idx;
  for (const auto& factor : split(label, '^')) {
    if (factor.rfind(prefix, 0) != 0) throw DocumentError("basis factor \"" + factor + "\" must start with " + prefix);
    idx.push_back(static_cast<std::uint16_t>(chart->index_of(factor.substr(prefix.size()))));
  }
  return idx;
}

template <class Tag>
Alternating<Tag> alternating(const json& v, const ChartPtr& chart, std::size_t degree, const std::string& prefix,
                             const std::string& where) {
  if (!v.is_object()) throw DocumentError(where + ": expected an object of basis terms");
  Alternating<Tag> out(chart, chart->dim(), degree);
  for (const auto& [label, coeff] : v.items()) {
    IndexTuple idx = basis_slots(label, prefix, chart);
    if (idx.size() != degree) {
      throw DocumentError(where + ": term \"" + label + "\" has degree " + std::to_string(idx.size()) +
                          ", expected " + std::to_string(degree));
    }
    if (std::set<std::uint16_t>(idx.begin(), idx.end()).size() != idx.size()) {
      throw DocumentError(where + ": repeated factor in \"" + label + "\"");
    }
    out.add_term(idx, expression(coeff, chart, where + "[" + label + "]"));
  }
  return out;
}

std::vector<DifferentialForm> form_list(const json& v, const ChartPtr& chart, std::size_t count, std::size_t degree,
                                        const std::string& where) {
  if (!v.is_array() || v.size() != count) {
    throw DocumentError(where + ": expected a list of " + std::to_string(count) + " forms");
  }
  std::vector<DifferentialForm> out;
  for (std::size_t a = 0; a < count; ++a) {
    out.push_back(alternating<FormTag>(v[a], chart, degree, "d", where + "[" + std::to_string(a) + "]"));
  }
  return out;
}

std::size_t frame_index(const Problem& p, const json& v) {
  if (v.is_string()) {
    for (std::size_t a = 0; a < p.frame.size(); ++a)
      if (p.frame[a] == v.get<std::string>()) return a;
    throw DocumentError("unknown frame name \"" + v.get<std::string>() + "\" in structure");
  }
  throw DocumentError("structure entries name frame sections by string");
}

}  // namespace

Problem parse_problem(const json& doc) {
  if (!doc.is_object()) throw DocumentError("problem document must be a JSON object");
  Problem p;
  p.name = doc.value("name", std::string());

  const json& base = field(doc, "base");
  if (!base.is_array()) throw DocumentError("\"base\" must be a list of coordinate names");
  std::vector<std::string> coords;
  for (const auto& c : base) {
    if (!c.is_string()) throw DocumentError("coordinate names must be strings");
    coords.push_back(c.get<std::string>());
  }
  if (std::set<std::string>(coords.begin(), coords.end()).size() != coords.size()) {
    throw DocumentError("coordinate names must be unique");
  }
  p.base = Chart::make_base(doc.value("chart", std::string("M")), coords);
  const std::size_t n = coords.size();

  const std::size_t r = count(field(doc, "rank"), "rank");
  if (doc.contains("frame")) {
    for (const auto& f : doc.at("frame")) {
      if (!f.is_string()) throw DocumentError("frame names must be strings");
      p.frame.push_back(f.get<std::string>());
    }
    if (p.frame.size() != r) throw DocumentError("\"frame\" must list rank names");
  } else {
    for (std::size_t a = 1; a <= r; ++a) p.frame.push_back("e" + std::to_string(a));
  }

  const json& anchor = field(doc, "anchor");
  if (!anchor.is_array() || anchor.size() != r) throw DocumentError("\"anchor\" must have one row per frame section");
  for (std::size_t a = 0; a < r; ++a) {
    if (!anchor[a].is_array() || anchor[a].size() != n) {
      throw DocumentError("anchor row " + std::to_string(a + 1) + " must have one entry per base coordinate");
    }
    std::vector<Polynomial> row;
    for (std::size_t j = 0; j < n; ++j) {
      row.push_back(expression(anchor[a][j], p.base, "anchor[" + std::to_string(a + 1) + "][" + std::to_string(j + 1) + "]"));
    }
    p.anchor.push_back(std::move(row));
  }

  if (doc.contains("structure")) {
    for (const auto& e : doc.at("structure")) {
      if (!e.is_array() || e.size() != 4) throw DocumentError("structure entries are [a, b, c, expression]");
      p.structure.push_back({frame_index(p, e[0]), frame_index(p, e[1]), frame_index(p, e[2]),
                             expression(e[3], p.base, "structure")});
    }
  }

  if (doc.contains("candidate")) {
    const json& c = doc.at("candidate");
    const std::string type = field(c, "type").get<std::string>();
    p.k = count(field(c, "k"), "k");
    if (p.k == 0) throw DocumentError("candidate degree k must be at least 1");
    if (type == "im_form") {
      p.kind = CandidateKind::im_form;
      p.forms = {p.k, form_list(field(c, "mu"), p.base, r, p.k - 1, "mu"),
                 form_list(field(c, "nu"), p.base, r, p.k, "nu")};
    } else if (type == "multivector") {
      p.kind = CandidateKind::multivector;
      p.multivector = alternating<MultivectorTag>(field(c, "terms"), p.total().chart, p.k, "d/d", "terms");
    } else if (type == "weil") {
      p.kind = CandidateKind::weil;
      p.linear = alternating<FormTag>(field(c, "form"), p.total().chart, p.k, "d", "form");
    } else {
      throw DocumentError("unknown candidate type \"" + type + "\"");
    }
  }

  static const char* implied[] = {"axioms", "im-form", "multivector", "weil"};
  p.mode = implied[static_cast<int>(p.kind)];
  if (doc.contains("options")) {
    const json& o = doc.at("options");
    p.mode = o.value("mode", p.mode);
    p.oracle = o.value("oracle", p.oracle);
    p.dirac = o.value("dirac", p.dirac);
    if (o.contains("k")) p.option_k = count(o.at("k"), "options.k");
    if (o.contains("samples")) p.samples = parse_samples(o.at("samples"), n);
  }
  return p;
}

Problem parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DocumentError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return parse_problem(doc);
  } catch (const json::exception& e) {
    throw DocumentError(std::string("malformed document: ") + e.what());
  }
}

std::vector<std::vector<Rational>> parse_samples(const json& doc, std::size_t dim) {
  if (!doc.is_array()) throw DocumentError("samples must be a list of points");
  const ChartPtr none = Chart::make_base("samples", {});
  std::vector<std::vector<Rational>> out;
  for (const auto& point : doc) {
    if (!point.is_array() || point.size() != dim) {
      throw DocumentError("each sample point needs " + std::to_string(dim) + " coordinates");
    }
    std::vector<Rational> coords;
    for (const auto& x : point) {
      const Polynomial v = parse_polynomial(expression_text(x, "sample"), none);
      if (!v.is_constant()) throw DocumentError("sample coordinates must be rational numbers");
      coords.push_back(v.constant_term());
    }
    out.push_back(std::move(coords));
  }
  return out;
}

}  // namespace imcalc::cli
