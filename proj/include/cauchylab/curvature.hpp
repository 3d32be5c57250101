#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cauchylab/measure.hpp"

namespace cauchylab {

/// Triangles whose area is at most this multiple of (longest side)^2 count as
/// collinear and contribute zero curvature.
inline constexpr double collinear_tolerance = 1e-14;

/// Default cap on the number of triple evaluations a single call may perform.
inline constexpr std::uint64_t default_triple_budget = 10'000'000'000ULL;

/// Radius of the circle through three distinct planar points, +inf when they
/// are collinear. Throws DegenerateTriple if two points coincide and
/// DimensionMismatch unless all points are planar.
double circumradius(const Point& a, const Point& b, const Point& c);

/// 1/R(a,b,c)^2 = 16 Area^2 / (|ab|^2 |bc|^2 |ca|^2), 0 for collinear triples.
/// Inputs are planar and pairwise distinct (unchecked).
inline double inverse_circumradius_sq(double ax, double ay, double bx, double by, double cx,
                                      double cy) noexcept {
  const double ux = bx - ax, uy = by - ay;
  const double vx = cx - ax, vy = cy - ay;
  const double wx = cx - bx, wy = cy - by;
  const double ab = ux * ux + uy * uy;
  const double ac = vx * vx + vy * vy;
  const double bc = wx * wx + wy * wy;
  const double cross = ux * vy - uy * vx;  // twice the signed area
  const double longest = ab > ac ? (ab > bc ? ab : bc) : (ac > bc ? ac : bc);
  // Area <= tol * longest^2  <=>  cross^2 <= 4 tol^2 longest^2.
  if (cross * cross <= 4.0 * collinear_tolerance * collinear_tolerance * longest * longest) return 0.0;
  return 4.0 * cross * cross / (ab * ac * bc);
}

struct CurvatureResult {
  double total = 0.0;                         ///< c^2(mu), ordered distinct triples
  std::optional<std::vector<double>> pointwise;  ///< c^2_mu(x_i) over the other atoms
  std::uint64_t triple_count = 0;             ///< ordered triples of distinct indices summed
};

/// c^2_mu(z): sum over ordered pairs (j, k), j != k, of atoms distinct from z of
/// w_j w_k / R(z, x_j, x_k)^2.
double menger_c2_point(const DiscreteMeasure& mu, const Point& z);

/// c^2(mu): sum over ordered triples of pairwise distinct indices of
/// w_i w_j w_k / R^2. Coincident-index triples are excluded (the diagonal has
/// no mass for the non-atomic measures being approximated). Parallel over the
/// outer index with a fixed block partition, so the result does not depend on
/// the thread count.
CurvatureResult menger_c2(const DiscreteMeasure& mu, bool with_pointwise = false);

/// Number of unordered triple evaluations menger_c2 performs on n atoms.
std::uint64_t triple_work(std::size_t n) noexcept;

struct CurvatureRatioEntry {
  double scale = 0.0;
  double max_ratio = 0.0;  ///< max over occupied cubes of c^2(mu|Q) / mu(Q)
  std::size_t cubes = 0;   ///< occupied lattice cubes examined
};

/// For each side length (strictly decreasing), the largest c^2(mu|Q)/mu(Q)
/// over the occupied origin-anchored lattice cubes of that side. Throws
/// EmptyMeasure, InvalidScales, BudgetExceeded.
std::vector<CurvatureRatioEntry> curvature_ratio_scan(const DiscreteMeasure& mu,
                                                      std::span<const double> scales,
                                                      std::uint64_t budget = default_triple_budget);

/// Throws InvalidScales unless scales are positive, finite and strictly decreasing.
void validate_scales(std::span<const double> scales);

}  // namespace cauchylab
