#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "imcalc/chart.hpp"
#include "imcalc/rational.hpp"

namespace imcalc {

/// Multivariate polynomial with exact rational coefficients on a chart.
///
/// Terms are stored as a map from dense exponent vectors (one entry per
/// chart coordinate) to non-zero coefficients, so two polynomials are equal
/// iff their term maps are equal. A default-constructed polynomial is the
/// chart-less zero; chart-less constants adopt the chart of the other operand
/// in arithmetic.
class Polynomial {
 public:
  using Exponent = std::vector<std::uint16_t>;
  using TermMap = std::map<Exponent, Rational>;

  Polynomial() = default;
  explicit Polynomial(ChartPtr chart);
  Polynomial(ChartPtr chart, TermMap terms);

  static Polynomial constant(ChartPtr chart, const Rational& value);
  static Polynomial variable(ChartPtr chart, std::size_t index);
  static Polynomial variable(ChartPtr chart, std::string_view name);

  const ChartPtr& chart() const noexcept { return chart_; }
  const TermMap& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  Rational constant_term() const;
  int total_degree() const noexcept;  // -1 for zero
  int degree_in(std::size_t index) const noexcept;

  Polynomial diff(std::size_t index) const;
  Polynomial diff(std::string_view name) const;

  Rational eval(std::span<const Rational> point) const;
  Rational eval(const std::map<std::string, Rational>& point) const;

  /// Substitutes a value for one coordinate; the chart is unchanged.
  Polynomial substitute(std::size_t index, const Rational& value) const;

  /// Re-expresses the polynomial on `target`, matching coordinates by name.
  /// Throws ChartError if a coordinate the polynomial depends on is missing.
  Polynomial embed(const ChartPtr& target) const;

  Polynomial pow(unsigned exponent) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& factor);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Canonical text in the expression grammar, e.g. "x1^2*x2 - 1/2".
  /// Terms are ordered by descending total degree, then descending exponent.
  std::string to_string() const;

 private:
  void adopt_chart(const Polynomial& other);

  ChartPtr chart_;
  TermMap terms_;
};

/// p(values[0], ..., values[n-1]): substitutes one polynomial per chart
/// coordinate of `p`. The result lives on the chart of the values.
Polynomial compose(const Polynomial& p, const std::vector<Polynomial>& values, const ChartPtr& target);

/// Parses the ASCII expression grammar
///   expr := ['+'|'-'] term (('+'|'-') term)*
///   term := factor ('*' factor)*
///   factor := atom ('^' uint)?
///   atom := rational | coordname | '(' expr ')'
///   rational := int ('/' uint)?
/// Whitespace is insignificant. Throws ParseError (with byte offset) or
/// ChartError for unknown coordinate names.
Polynomial parse_polynomial(std::string_view text, const ChartPtr& chart);

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

}  // namespace imcalc
