#include "imcalc/prolongation.hpp"

#include "imcalc/errors.hpp"

namespace imcalc {

std::string tangent_copy_name(unsigned n, const std::string& x) { return "xdot" + std::to_string(n) + "_" + x; }

std::string dual_copy_name(unsigned n, const std::string& e) { return "xi" + std::to_string(n) + "_" + e; }

namespace {

Verification inherit(const LieAlgebroid& A) {
  return A.verified() ? Verification::checked : Verification::unchecked;
}

}  // namespace

LieAlgebroid tangent_prolongation(const LieAlgebroid& A, unsigned k) {
  if (k == 0) throw DomainError("prolongation order must be at least 1");
  const std::size_t n = A.dim();
  const std::size_t r = A.rank();
  const auto& base = A.base();

  std::vector<Coordinate> coords = base->coordinates();
  for (unsigned m = 1; m <= k; ++m) {
    for (std::size_t j = 0; j < n; ++j) {
      coords.push_back({tangent_copy_name(m, base->coordinate(j).name), CoordinateRole::tangent_copy, m});
    }
  }
  auto chart = Chart::make("T" + std::to_string(k) + "(" + base->name() + ")", std::move(coords));
  auto xdot = [&](unsigned m, std::size_t j) { return Polynomial::variable(chart, n + (m - 1) * n + j); };
  auto lift = [&](const Polynomial& p) { return p.embed(chart); };
  auto core = [&](std::size_t a, unsigned m) { return (m - 1) * r + a; };
  auto linear = [&](std::size_t a) { return k * r + a; };
  // sum_i xdot_m^i d_i f
  auto along = [&](unsigned m, const Polynomial& f) {
    Polynomial out(chart);
    for (std::size_t i = 0; i < n; ++i) out += xdot(m, i) * lift(f.diff(i));
    return out;
  };

  const std::size_t R = (k + 1) * r;
  const std::size_t N = chart->dim();
  std::vector<std::string> frame(R);
  std::vector<std::vector<Polynomial>> anchor(R, std::vector<Polynomial>(N, Polynomial(chart)));
  for (unsigned m = 1; m <= k; ++m) {
    for (std::size_t a = 0; a < r; ++a) {
      frame[core(a, m)] = "ehat" + std::to_string(m) + "_" + A.frame_names()[a];
      for (std::size_t j = 0; j < n; ++j) anchor[core(a, m)][n + (m - 1) * n + j] = lift(A.anchor(a, j));
    }
  }
  for (std::size_t a = 0; a < r; ++a) {
    frame[linear(a)] = "T" + A.frame_names()[a];
    for (std::size_t j = 0; j < n; ++j) {
      anchor[linear(a)][j] = lift(A.anchor(a, j));
      for (unsigned m = 1; m <= k; ++m) anchor[linear(a)][n + (m - 1) * n + j] = along(m, A.anchor(a, j));
    }
  }

  std::vector<StructureEntry> structure;
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      for (std::size_t d = 0; d < r; ++d) {
        const Polynomial& C = A.structure(a, b, d);
        for (unsigned m = 1; m <= k; ++m) {
          if (!C.is_zero()) structure.push_back({linear(a), core(b, m), core(d, m), lift(C)});
        }
        if (a >= b) continue;
        if (!C.is_zero()) structure.push_back({linear(a), linear(b), linear(d), lift(C)});
        for (unsigned m = 1; m <= k; ++m) {
          Polynomial v = along(m, C);
          if (!v.is_zero()) structure.push_back({linear(a), linear(b), core(d, m), v});
        }
      }
    }
  }
  return LieAlgebroid(chart, std::move(frame), std::move(anchor), structure, inherit(A));
}

LieAlgebroid cotangent_prolongation(const LieAlgebroid& A, unsigned k) {
  if (k == 0) throw DomainError("prolongation order must be at least 1");
  const std::size_t n = A.dim();
  const std::size_t r = A.rank();
  const auto& base = A.base();

  std::vector<Coordinate> coords = base->coordinates();
  for (unsigned m = 1; m <= k; ++m) {
    for (std::size_t d = 0; d < r; ++d) {
      coords.push_back({dual_copy_name(m, A.frame_names()[d]), CoordinateRole::dual_copy, m});
    }
  }
  auto chart = Chart::make("T*" + std::to_string(k) + "(" + base->name() + ")", std::move(coords));
  auto xi_index = [&](unsigned m, std::size_t d) { return n + (m - 1) * r + d; };
  auto xi = [&](unsigned m, std::size_t d) { return Polynomial::variable(chart, xi_index(m, d)); };
  auto lift = [&](const Polynomial& p) { return p.embed(chart); };
  auto core = [&](std::size_t i, unsigned m) { return (m - 1) * n + i; };
  auto linear = [&](std::size_t a) { return k * n + a; };

  const std::size_t R = k * n + r;
  const std::size_t N = chart->dim();
  std::vector<std::string> frame(R);
  std::vector<std::vector<Polynomial>> anchor(R, std::vector<Polynomial>(N, Polynomial(chart)));
  for (unsigned m = 1; m <= k; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      frame[core(i, m)] = "dxhat" + std::to_string(m) + "_" + base->coordinate(i).name;
      for (std::size_t d = 0; d < r; ++d) anchor[core(i, m)][xi_index(m, d)] = lift(A.anchor(d, i));
    }
  }
  for (std::size_t a = 0; a < r; ++a) {
    frame[linear(a)] = "L" + A.frame_names()[a];
    for (std::size_t j = 0; j < n; ++j) anchor[linear(a)][j] = lift(A.anchor(a, j));
    for (unsigned m = 1; m <= k; ++m) {
      for (std::size_t b = 0; b < r; ++b) {
        Polynomial v(chart);
        for (std::size_t c = 0; c < r; ++c) v += lift(A.structure(a, b, c)) * xi(m, c);
        anchor[linear(a)][xi_index(m, b)] = v;
      }
    }
  }

  std::vector<StructureEntry> structure;
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        Polynomial v = lift(A.anchor(a, j).diff(i));
        if (v.is_zero()) continue;
        for (unsigned m = 1; m <= k; ++m) structure.push_back({linear(a), core(j, m), core(i, m), v});
      }
    }
    for (std::size_t b = a + 1; b < r; ++b) {
      for (std::size_t d = 0; d < r; ++d) {
        if (!A.structure(a, b, d).is_zero()) {
          structure.push_back({linear(a), linear(b), linear(d), lift(A.structure(a, b, d))});
        }
      }
      for (unsigned m = 1; m <= k; ++m) {
        for (std::size_t i = 0; i < n; ++i) {
          Polynomial v(chart);
          for (std::size_t c = 0; c < r; ++c) v -= lift(A.structure(a, b, c).diff(i)) * xi(m, c);
          if (!v.is_zero()) structure.push_back({linear(a), linear(b), core(i, m), v});
        }
      }
    }
  }
  return LieAlgebroid(chart, std::move(frame), std::move(anchor), structure, inherit(A));
}

}  // namespace imcalc
