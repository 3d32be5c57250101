#include "cauchylab/density.hpp"

#include <algorithm>
#include <cmath>

#include "cauchylab/curvature.hpp"
#include "cauchylab/error.hpp"

namespace cauchylab {

double theta(const DiscreteMeasure& mu, const Cube& q, int n) {
  if (n < 1) throw Error(Errc::invalid_argument, "density exponent must be >= 1");
  return mass_in(mu, q) / std::pow(q.side(), n);
}

DensityProfile density_profile(const DiscreteMeasure& mu, std::span<const double> scales, int n,
                               bool shifted) {
  if (n < 1) throw Error(Errc::invalid_argument, "density exponent must be >= 1");
  validate_scales(scales);
  DensityProfile profile{n, {}};
  for (double delta : scales) {
    const double norm = std::pow(delta, n);
    double sup = 0.0;
    for (const auto& cell : occupied_cells(mu, delta)) sup = std::max(sup, cell.mass / norm);
    if (shifted) {
      for (const auto& cell : occupied_cells(mu, delta, delta / 2)) sup = std::max(sup, cell.mass / norm);
    }
    profile.entries.push_back({delta, sup});
  }
  return profile;
}

double growth_constant(const DiscreteMeasure& mu, std::span<const double> scales) {
  const auto profile = density_profile(mu, scales, 1);
  const Cube box = bounding_cube(mu);
  double c0 = mu.total_mass() / box.side();
  for (const auto& e : profile.entries) c0 = std::max(c0, e.sup_density);
  return c0;
}

std::optional<std::pair<Cube, Cube>> find_separated_pair(const DiscreteMeasure& mu, const Cube& q,
                                                         int c1, double c1p) {
  if (q.dim() != 2 || (!mu.empty() && mu.dim() != 2)) {
    throw Error(Errc::dimension_mismatch, "cube splitting is planar");
  }
  if (c1 < 3) throw Error(Errc::invalid_argument, "C1 must be at least 3");
  if (!(c1p > 0.0)) throw Error(Errc::invalid_argument, "C1' must be positive");

  const auto cells = static_cast<std::size_t>(c1);
  const double h = q.side() / c1;
  auto edge = [&](std::size_t axis, std::size_t k) {
    return k == cells ? q.upper(axis) : q.lower(axis) + static_cast<double>(k) * h;
  };
  std::vector<double> mass(cells * cells, 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    auto p = mu.point(i);
    if (!q.contains(p)) continue;
    std::size_t idx[2];
    for (std::size_t a = 0; a < 2; ++a) {
      auto k = static_cast<std::size_t>(std::clamp((p[a] - q.lower(a)) / h, 0.0, static_cast<double>(cells - 1)));
      while (k > 0 && p[a] < edge(a, k)) --k;
      while (k + 1 < cells && p[a] >= edge(a, k + 1)) ++k;
      idx[a] = k;
    }
    mass[idx[0] * cells + idx[1]] += mu.weight(i);
  }

  auto cell_cube = [&](std::size_t ix, std::size_t iy) {
    // The last row/column inherits the parent's closed face.
    const bool closed_edge = !q.half_open() && (ix + 1 == cells || iy + 1 == cells);
    return Cube::from_bounds({edge(0, ix), edge(1, iy)}, {edge(0, ix + 1), edge(1, iy + 1)}, h, !closed_edge);
  };

  const double threshold = q.side() / c1p;
  for (std::size_t a = 0; a < cells * cells; ++a) {
    if (mass[a] < threshold) continue;
    for (std::size_t b = a + 1; b < cells * cells; ++b) {
      if (mass[b] < threshold) continue;
      const auto ax = a / cells, ay = a % cells, bx = b / cells, by = b % cells;
      const std::size_t cheb = std::max(ax > bx ? ax - bx : bx - ax, ay > by ? ay - by : by - ay);
      if (cheb >= 2) return std::make_pair(cell_cube(ax, ay), cell_cube(bx, by));
    }
  }
  return std::nullopt;
}

}  // namespace cauchylab
