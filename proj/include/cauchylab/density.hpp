#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cauchylab/measure.hpp"

namespace cauchylab {

struct DensityEntry {
  double scale = 0.0;
  double sup_density = 0.0;
};

/// Sup of mu(Q)/l(Q)^n over the occupied cubes of each probed side length.
struct DensityProfile {
  int exponent = 1;
  std::vector<DensityEntry> entries;
};

/// Θ^n_mu(Q) = mu(Q) / l(Q)^n. Throws DimensionMismatch, InvalidArgument (n < 1).
double theta(const DiscreteMeasure& mu, const Cube& q, int n);

/// For every side δ (strictly decreasing), the sup of Θ^n over the occupied
/// origin-anchored lattice cubes of side δ and, when `shifted` is set, over the
/// same lattice translated by δ/2 on every axis. Any cube of side δ/2 centered
/// at an atom lies inside a cell of one of the two lattices.
DensityProfile density_profile(const DiscreteMeasure& mu, std::span<const double> scales, int n,
                               bool shifted = true);

/// Empirical linear-growth constant: max of the n = 1 profile over the given
/// scales and of mu(B)/l(B) for the bounding cube B of the support.
double growth_constant(const DiscreteMeasure& mu, std::span<const double> scales);

/// Splits the planar cube q into a c1 x c1 grid (cells indexed row-major in x
/// then y) and returns the first pair of cells, in lexicographic order of
/// their indices, that do not touch and both carry mass >= l(q)/c1p.
std::optional<std::pair<Cube, Cube>> find_separated_pair(const DiscreteMeasure& mu, const Cube& q,
                                                         int c1, double c1p);

}  // namespace cauchylab
