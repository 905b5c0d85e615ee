#include "imcalc/chart.hpp"

#include <functional>

#include "imcalc/errors.hpp"

namespace imcalc {

Chart::Chart(std::string name, std::vector<Coordinate> coordinates)
    : name_(std::move(name)), coordinates_(std::move(coordinates)) {
  bool seen_non_base = false;
  std::hash<std::string> hasher;
  for (std::size_t i = 0; i < coordinates_.size(); ++i) {
    const auto& c = coordinates_[i];
    if (c.name.empty()) throw ChartError("empty coordinate name in chart '" + name_ + "'");
    if (!index_.emplace(c.name, i).second) {
      throw ChartError("duplicate coordinate '" + c.name + "' in chart '" + name_ + "'");
    }
    if (c.role != CoordinateRole::base) {
      seen_non_base = true;
    } else if (seen_non_base) {
      throw ChartError("base coordinate '" + c.name + "' listed after non-base coordinates");
    }
    fingerprint_ = fingerprint_ * 1000003u ^ (hasher(c.name) + static_cast<std::size_t>(c.role) * 31u + c.copy);
  }
}

ChartPtr Chart::make(std::string name, std::vector<Coordinate> coordinates) {
  return ChartPtr(new Chart(std::move(name), std::move(coordinates)));
}

ChartPtr Chart::make_base(std::string name, const std::vector<std::string>& names) {
  std::vector<Coordinate> coords;
  coords.reserve(names.size());
  for (const auto& n : names) coords.push_back({n, CoordinateRole::base, 0});
  return make(std::move(name), std::move(coords));
}

std::optional<std::size_t> Chart::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Chart::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw ChartError("unknown coordinate '" + std::string(name) + "' in chart '" + name_ + "'");
}

std::size_t Chart::count(CoordinateRole role) const {
  std::size_t n = 0;
  for (const auto& c : coordinates_) n += (c.role == role);
  return n;
}

bool Chart::same_as(const Chart& other) const noexcept {
  if (this == &other) return true;
  return fingerprint_ == other.fingerprint_ && coordinates_ == other.coordinates_;
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

}  // namespace imcalc
