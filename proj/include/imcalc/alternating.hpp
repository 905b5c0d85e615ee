#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include "imcalc/errors.hpp"
#include "imcalc/polynomial.hpp"

namespace imcalc {

/// Strictly increasing list of slot indices (0-based) in canonical storage.
using IndexTuple = std::vector<std::uint16_t>;

/// Sorts `idx` in place and returns the sign of the sorting permutation,
/// or 0 if an index repeats.
inline int sort_with_sign(IndexTuple& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

struct FormTag {};
struct MultivectorTag {};
struct SectionTag {};

/// Totally antisymmetric coefficient table: strictly increasing slot tuples
/// of length `degree` mapped to non-zero polynomials on `chart`.
///
/// `slots` is the number of index values (the chart dimension for forms and
/// multivectors, the bundle rank for sections of a wedge power). Objects of
/// degree above `slots` are valid and identically zero. The tag keeps forms,
/// multivectors and bundle sections apart at the type level.
template <class Tag>
class Alternating {
 public:
  using Coefficients = std::map<IndexTuple, Polynomial>;

  Alternating() = default;
  Alternating(ChartPtr chart, std::size_t slots, std::size_t degree)
      : chart_(std::move(chart)), slots_(slots), degree_(degree) {}

  const ChartPtr& chart() const noexcept { return chart_; }
  std::size_t slots() const noexcept { return slots_; }
  std::size_t degree() const noexcept { return degree_; }
  const Coefficients& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Coefficient on an arbitrary ordering of slots, with the permutation sign.
  Polynomial coefficient(IndexTuple idx) const {
    check_tuple(idx);
    const int sign = sort_with_sign(idx);
    if (sign == 0) return Polynomial(chart_);
    auto it = coeffs_.find(idx);
    if (it == coeffs_.end()) return Polynomial(chart_);
    return sign > 0 ? it->second : -it->second;
  }

  /// Adds `c` times the basis element on `idx` (any ordering).
  void add_term(IndexTuple idx, const Polynomial& c) {
    check_tuple(idx);
    if (c.is_zero()) return;
    const int sign = sort_with_sign(idx);
    if (sign == 0) return;
    const Polynomial& value = c.chart() ? c : c.embed(chart_);
    auto it = coeffs_.find(idx);
    if (it == coeffs_.end()) {
      coeffs_.emplace(std::move(idx), sign > 0 ? value : -value);
      return;
    }
    if (sign > 0) {
      it->second += value;
    } else {
      it->second -= value;
    }
    if (it->second.is_zero()) coeffs_.erase(it);
  }

  Alternating& operator+=(const Alternating& other) {
    check_compatible(other);
    if (!chart_) chart_ = other.chart_;
    if (is_zero()) degree_ = other.degree_;
    for (const auto& [idx, c] : other.coeffs_) add_term(idx, c);
    return *this;
  }
  Alternating& operator-=(const Alternating& other) {
    check_compatible(other);
    if (!chart_) chart_ = other.chart_;
    if (is_zero()) degree_ = other.degree_;
    for (const auto& [idx, c] : other.coeffs_) add_term(idx, -c);
    return *this;
  }
  friend Alternating operator+(Alternating a, const Alternating& b) { return a += b; }
  friend Alternating operator-(Alternating a, const Alternating& b) { return a -= b; }
  Alternating operator-() const {
    Alternating out = *this;
    for (auto& [idx, c] : out.coeffs_) c = -c;
    return out;
  }

  /// Multiplication by a function.
  friend Alternating operator*(const Polynomial& f, const Alternating& a) {
    Alternating out(a.chart_, a.slots_, a.degree_);
    if (f.is_zero()) return out;
    for (const auto& [idx, c] : a.coeffs_) {
      Polynomial p = f * c;
      if (!p.is_zero()) out.coeffs_.emplace(idx, std::move(p));
    }
    return out;
  }

  friend bool operator==(const Alternating& a, const Alternating& b) {
    if (a.is_zero() && b.is_zero()) return true;
    if (a.degree_ != b.degree_ || a.slots_ != b.slots_) return false;
    if (a.coeffs_.size() != b.coeffs_.size()) return false;
    auto ia = a.coeffs_.begin();
    for (auto ib = b.coeffs_.begin(); ib != b.coeffs_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    }
    return true;
  }

  /// Applies `fn` to every coefficient, re-targeting to `chart`.
  template <class Fn>
  Alternating map_coefficients(ChartPtr chart, Fn&& fn) const {
    Alternating out(std::move(chart), slots_, degree_);
    for (const auto& [idx, c] : coeffs_) out.add_term(idx, fn(c));
    return out;
  }

 private:
  void check_tuple(const IndexTuple& idx) const {
    if (idx.size() != degree_) throw DomainError("index tuple length differs from degree");
    for (auto i : idx) {
      if (i >= slots_) throw DomainError("slot index out of range");
    }
  }
  void check_compatible(const Alternating& other) const {
    if (other.degree_ != degree_ && !other.is_zero() && !is_zero()) {
      throw DomainError("degree mismatch in alternating sum");
    }
    if (other.slots_ != slots_) throw DomainError("slot count mismatch in alternating sum");
    if (!same_chart(chart_, other.chart_) && chart_ && other.chart_) {
      throw ChartError("alternating tensors live on different charts");
    }
  }

  ChartPtr chart_;
  std::size_t slots_ = 0;
  std::size_t degree_ = 0;
  Coefficients coeffs_;
};

/// Exterior product; graded commutative: a^b = (-1)^{pq} b^a.
template <class Tag>
Alternating<Tag> wedge(const Alternating<Tag>& a, const Alternating<Tag>& b) {
  if (a.slots() != b.slots()) throw DomainError("slot count mismatch in wedge");
  if (a.chart() && b.chart() && !same_chart(a.chart(), b.chart())) {
    throw ChartError("wedge of tensors on different charts");
  }
  Alternating<Tag> out(a.chart() ? a.chart() : b.chart(), a.slots(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.coefficients()) {
    for (const auto& [ib, cb] : b.coefficients()) {
      IndexTuple idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add_term(std::move(idx), ca * cb);
    }
  }
  return out;
}

/// Debug rendering "{[0,1]: x1, [0,2]: -1}" with 0-based slots.
template <class Tag>
std::ostream& operator<<(std::ostream& os, const Alternating<Tag>& a) {
  os << "{";
  bool first = true;
  for (const auto& [idx, c] : a.coefficients()) {
    os << (first ? "" : ", ") << "[";
    for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
    os << "]: " << c;
    first = false;
  }
  return os << "}";
}

/// Re-expresses every coefficient on `target` (coordinates matched by name).
/// Slot indices are unchanged, so this is only meaningful when the slot
/// labels keep their meaning (sections of a bundle, or forms whose chart
/// grows by trailing coordinates).
template <class Tag>
Alternating<Tag> embed_coefficients(const Alternating<Tag>& a, const ChartPtr& target, std::size_t slots) {
  Alternating<Tag> out(target, slots, a.degree());
  for (const auto& [idx, c] : a.coefficients()) out.add_term(idx, c.embed(target));
  return out;
}

}  // namespace imcalc
