#include "imcalc/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "imcalc/errors.hpp"

namespace imcalc {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid = [](std::string_view part, bool allow_sign) {
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) part.remove_prefix(1);
    return !part.empty() && std::all_of(part.begin(), part.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num, true) || !valid(den, false)) throw DomainError("malformed rational '" + s + "'");
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw DomainError("zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

void check_length(const ChartPtr& chart, const Polynomial::Exponent& e) {
  const std::size_t dim = chart ? chart->dim() : 0;
  if (e.size() != dim) throw DomainError("exponent vector length does not match chart dimension");
}

}  // namespace

Polynomial::Polynomial(ChartPtr chart) : chart_(std::move(chart)) {}

Polynomial::Polynomial(ChartPtr chart, TermMap terms) : chart_(std::move(chart)) {
  for (auto& [e, c] : terms) {
    check_length(chart_, e);
    if (c != 0) terms_.emplace(e, c);
  }
}

Polynomial Polynomial::constant(ChartPtr chart, const Rational& value) {
  Polynomial p(std::move(chart));
  if (value != 0) p.terms_.emplace(Exponent(p.chart_ ? p.chart_->dim() : 0, 0), value);
  return p;
}

Polynomial Polynomial::variable(ChartPtr chart, std::size_t index) {
  if (!chart || index >= chart->dim()) throw ChartError("coordinate index out of range");
  Polynomial p(std::move(chart));
  Exponent e(p.chart_->dim(), 0);
  e[index] = 1;
  p.terms_.emplace(std::move(e), Rational(1));
  return p;
}

Polynomial Polynomial::variable(ChartPtr chart, std::string_view name) {
  if (!chart) throw ChartError("variable on a null chart");
  const std::size_t i = chart->index_of(name);
  return variable(std::move(chart), i);
}

bool Polynomial::is_constant() const noexcept {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](auto v) { return v == 0; });
}

Rational Polynomial::constant_term() const {
  for (const auto& [e, c] : terms_) {
    if (std::all_of(e.begin(), e.end(), [](auto v) { return v == 0; })) return c;
  }
  return Rational(0);
}

int Polynomial::total_degree() const noexcept {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    best = std::max(best, std::accumulate(e.begin(), e.end(), 0));
  }
  return best;
}

int Polynomial::degree_in(std::size_t index) const noexcept {
  int best = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) {
    if (index < e.size()) best = std::max(best, static_cast<int>(e[index]));
  }
  return best;
}

Polynomial Polynomial::diff(std::size_t index) const {
  if (!chart_ || index >= chart_->dim()) {
    if (terms_.empty() || !chart_) return Polynomial(chart_);
    throw ChartError("coordinate index out of range");
  }
  Polynomial out(chart_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponent f = e;
    --f[index];
    out.terms_.emplace(std::move(f), c * e[index]);
  }
  return out;
}

Polynomial Polynomial::diff(std::string_view name) const {
  if (!chart_) throw ChartError("unknown coordinate '" + std::string(name) + "'");
  return diff(chart_->index_of(name));
}

Rational Polynomial::eval(std::span<const Rational> point) const {
  const std::size_t dim = chart_ ? chart_->dim() : 0;
  if (point.size() != dim) throw DomainError("evaluation point has wrong dimension");
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned p = 0; p < e[i]; ++p) term *= point[i];
    }
    sum += term;
  }
  return sum;
}

Rational Polynomial::eval(const std::map<std::string, Rational>& point) const {
  std::vector<Rational> values;
  const std::size_t dim = chart_ ? chart_->dim() : 0;
  values.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& name = chart_->coordinate(i).name;
    auto it = point.find(name);
    if (it == point.end()) throw DomainError("missing value for coordinate '" + name + "'");
    values.push_back(it->second);
  }
  return eval(values);
}

Polynomial Polynomial::substitute(std::size_t index, const Rational& value) const {
  if (!chart_ || index >= chart_->dim()) throw ChartError("coordinate index out of range");
  Polynomial out(chart_);
  for (const auto& [e, c] : terms_) {
    Rational factor = c;
    for (unsigned p = 0; p < e[index]; ++p) factor *= value;
    if (factor == 0) continue;
    Exponent f = e;
    f[index] = 0;
    auto [it, inserted] = out.terms_.emplace(std::move(f), factor);
    if (!inserted) {
      it->second += factor;
      if (it->second == 0) out.terms_.erase(it);
    }
  }
  return out;
}

Polynomial Polynomial::embed(const ChartPtr& target) const {
  if (same_chart(chart_, target)) {
    Polynomial out = *this;
    out.chart_ = target;
    return out;
  }
  const std::size_t dim = chart_ ? chart_->dim() : 0;
  std::vector<std::size_t> map(dim);
  std::vector<bool> used(dim, false);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < dim; ++i) used[i] = used[i] || e[i] != 0;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    auto j = target ? target->find(chart_->coordinate(i).name) : std::nullopt;
    if (!j) {
      if (used[i]) {
        throw ChartError("cannot embed: coordinate '" + chart_->coordinate(i).name + "' missing from target chart");
      }
      map[i] = static_cast<std::size_t>(-1);
    } else {
      map[i] = *j;
    }
  }
  Polynomial out(target);
  const std::size_t tdim = target ? target->dim() : 0;
  for (const auto& [e, c] : terms_) {
    Exponent f(tdim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
      if (e[i] != 0) f[map[i]] = e[i];
    }
    out.terms_.emplace(std::move(f), c);
  }
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(chart_, Rational(1));
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent > 0) base *= base;
  }
  return result;
}

void Polynomial::adopt_chart(const Polynomial& other) {
  if (!chart_ && other.chart_) *this = embed(other.chart_);
}

namespace {

void merge_terms(Polynomial::TermMap& into, const Polynomial::TermMap& from) {
  for (const auto& [e, c] : from) {
    auto [it, inserted] = into.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) into.erase(it);
    }
  }
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  adopt_chart(other);
  if (other.terms_.empty()) return *this;
  if (same_chart(chart_, other.chart_)) {
    merge_terms(terms_, other.terms_);
  } else if (!other.chart_) {
    merge_terms(terms_, other.embed(chart_).terms_);
  } else {
    throw ChartError("polynomials live on different charts ('" + chart_->name() + "' vs '" + other.chart_->name() + "')");
  }
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& factor) {
  if (factor == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= factor;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  ChartPtr chart = a.chart_ ? a.chart_ : b.chart_;
  if (a.chart_ && b.chart_ && !same_chart(a.chart_, b.chart_)) {
    throw ChartError("polynomials live on different charts ('" + a.chart_->name() + "' vs '" + b.chart_->name() + "')");
  }
  Polynomial out(chart);
  if (a.is_zero() || b.is_zero()) return out;
  const Polynomial& lhs_src = a;
  Polynomial lhs_tmp, rhs_tmp;
  const Polynomial* lhs = &lhs_src;
  const Polynomial* rhs = &b;
  if (!a.chart_ && chart) lhs = &(lhs_tmp = a.embed(chart));
  if (!b.chart_ && chart) rhs = &(rhs_tmp = b.embed(chart));
  for (const auto& [ea, ca] : lhs->terms_) {
    for (const auto& [eb, cb] : rhs->terms_) {
      Polynomial::Exponent e(ea.size());
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      Rational c = ca * cb;
      auto [it, inserted] = out.terms_.emplace(std::move(e), c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.empty() || b.terms_.empty()) return a.terms_.empty() && b.terms_.empty();
  if (same_chart(a.chart_, b.chart_)) return a.terms_ == b.terms_;
  if (!a.chart_ || !b.chart_) {
    return a.is_constant() && b.is_constant() && a.constant_term() == b.constant_term();
  }
  return false;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](auto* x, auto* y) {
    const int dx = std::accumulate(x->first.begin(), x->first.end(), 0);
    const int dy = std::accumulate(y->first.begin(), y->first.end(), 0);
    if (dx != dy) return dx > dy;
    return x->first > y->first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto* t : order) {
    const auto& [e, c] = *t;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += chart_->coordinate(i).name;
      if (e[i] > 1) mono += '^' + std::to_string(e[i]);
    }
    Rational mag = abs(c);
    const bool negative = c < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      out << mag.get_str();
    } else if (mag == 1) {
      out << mono;
    } else {
      out << mag.get_str() << '*' << mono;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const ChartPtr& chart) : text_(text), chart_(chart) {}

  Polynomial run() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    skip_ws();
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      std::string digits = read_digits();
      if (digits.empty()) throw ParseError("expected unsigned integer exponent", start);
      if (digits.size() > 4) throw ParseError("exponent too large", start);
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      skip_ws();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = read_digits();
      std::string den = "1";
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_ws();
        const std::size_t start = pos_;
        den = read_digits();
        if (den.empty()) throw ParseError("expected unsigned integer denominator", start);
        if (mpz_class(den) == 0) throw ParseError("zero denominator", start);
      }
      Rational q{mpz_class(num), mpz_class(den)};
      q.canonicalize();
      return Polynomial::constant(chart_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (!chart_ || !chart_->find(name)) {
        throw ChartError("unknown coordinate '" + name + "' at offset " + std::to_string(start));
      }
      return Polynomial::variable(chart_, name);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  const ChartPtr& chart_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial compose(const Polynomial& p, const std::vector<Polynomial>& values, const ChartPtr& target) {
  const std::size_t dim = p.chart() ? p.chart()->dim() : 0;
  if (values.size() != dim) throw DomainError("composition needs one value per coordinate");
  Polynomial out(target);
  for (const auto& [e, c] : p.terms()) {
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < dim; ++i) {
      if (e[i] != 0) term *= values[i].embed(target).pow(e[i]);
    }
    out += term;
  }
  return out;
}

Polynomial parse_polynomial(std::string_view text, const ChartPtr& chart) {
  Polynomial p = ExpressionParser(text, chart).run();
  if (p.chart() != chart) p = p.embed(chart);
  return p;
}

}  // namespace imcalc
