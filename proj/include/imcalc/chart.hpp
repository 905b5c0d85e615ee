#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace imcalc {

/// Bookkeeping role of a coordinate in a double-vector-bundle chart.
enum class CoordinateRole {
  base,          // x^j on M
  fiber,         // u^d on A (or xdot^j on TM)
  tangent_copy,  // xdot^j_n on the n-th copy of TM
  dual_copy,     // xi^n_d on the n-th copy of A*
};

struct Coordinate {
  std::string name;
  CoordinateRole role = CoordinateRole::base;
  unsigned copy = 0;  // 1-based copy number for tangent_copy / dual_copy

  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// Ordered list of named coordinates. Base coordinates come first.
/// Charts compare structurally, so two independently built charts with the
/// same coordinates are interchangeable.
class Chart {
 public:
  static ChartPtr make(std::string name, std::vector<Coordinate> coordinates);
  /// Chart whose coordinates are all base coordinates.
  static ChartPtr make_base(std::string name, const std::vector<std::string>& names);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return coordinates_.size(); }
  const std::vector<Coordinate>& coordinates() const noexcept { return coordinates_; }
  const Coordinate& coordinate(std::size_t i) const { return coordinates_.at(i); }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws ChartError when the name is not a coordinate of this chart.
  std::size_t index_of(std::string_view name) const;

  std::size_t count(CoordinateRole role) const;

  bool same_as(const Chart& other) const noexcept;

 private:
  Chart(std::string name, std::vector<Coordinate> coordinates);

  std::string name_;
  std::vector<Coordinate> coordinates_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t fingerprint_ = 0;
};

/// Structural equality; null charts only equal each other.
bool same_chart(const ChartPtr& a, const ChartPtr& b) noexcept;

}  // namespace imcalc
