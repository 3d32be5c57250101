#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace cauchylab {

/// A point of R^d. In the plane coords are read as (Re z, Im z).
class Point {
 public:
  Point() = default;
  Point(std::initializer_list<double> coords);
  explicit Point(std::vector<double> coords);
  explicit Point(std::span<const double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// Axis-aligned cube. Bounds are stored per axis so that neighbouring cells
/// built from a shared grid agree bit-for-bit on their common face.
///
/// Half-open membership is lower <= x < upper on every axis; closed membership
/// is lower <= x <= upper.
class Cube {
 public:
  /// Cube of side `side` centered at `center`.
  static Cube centered(const Point& center, double side, bool half_open = true);
  /// Cube [lower, lower + side) with explicit corner.
  static Cube from_corner(const Point& lower, double side, bool half_open = true);
  /// Cube with explicit per-axis bounds; `side` is the nominal l(Q).
  static Cube from_bounds(std::vector<double> lower, std::vector<double> upper, double side,
                          bool half_open = true);

  std::size_t dim() const noexcept { return lower_.size(); }
  double side() const noexcept { return side_; }
  bool half_open() const noexcept { return half_open_; }
  double lower(std::size_t i) const { return lower_[i]; }
  double upper(std::size_t i) const { return upper_[i]; }
  Point center() const;

  bool contains(std::span<const double> x) const;
  bool contains(const Point& p) const { return contains(p.coords()); }

  /// Sup-norm gap between the two cubes (0 when they touch or overlap).
  double distance(const Cube& other) const;
  /// True if the interiors intersect.
  bool overlaps(const Cube& other) const;

  /// The 2^d children obtained by halving every axis; child bounds reuse the
  /// parent's corners and midpoints, so the children tile the parent exactly.
  std::vector<Cube> dyadic_children() const;

 private:
  Cube(std::vector<double> lower, std::vector<double> upper, double side, bool half_open);

  std::vector<double> lower_;
  std::vector<double> upper_;
  double side_ = 0.0;
  bool half_open_ = true;
};

/// Finite weighted point set: the discrete stand-in for a compactly supported
/// measure without atoms. Weights are positive and points pairwise distinct.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  /// Validating constructor. Throws DimensionMismatch, DuplicatePoint,
  /// NonpositiveWeight, LengthMismatch.
  DiscreteMeasure(const std::vector<Point>& points, std::vector<double> weights);
  /// Validating constructor from flat row-major coordinates (size() * dim values).
  DiscreteMeasure(std::size_t dim, std::vector<double> coords, std::vector<double> weights);

  std::size_t size() const noexcept { return weights_.size(); }
  bool empty() const noexcept { return weights_.empty(); }
  std::size_t dim() const noexcept { return dim_; }
  double total_mass() const noexcept { return total_mass_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  double coord(std::size_t i, std::size_t axis) const { return coords_[i * dim_ + axis]; }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> coords() const noexcept { return coords_; }
  std::vector<Point> points() const;

  /// Sub-measure on the given atom indices (already known distinct, so no
  /// revalidation).
  DiscreteMeasure subset(std::span<const std::size_t> indices) const;
  /// Same atoms, weights multiplied by t > 0.
  DiscreteMeasure scaled_weights(double t) const;

 private:
  struct Trusted {};
  DiscreteMeasure(Trusted, std::size_t dim, std::vector<double> coords, std::vector<double> weights);
  void validate() const;

  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::vector<double> weights_;
  double total_mass_ = 0.0;
};

inline DiscreteMeasure new_measure(const std::vector<Point>& points, std::vector<double> weights) {
  return DiscreteMeasure(points, std::move(weights));
}

/// μ⌊Q: the atoms lying in Q under Q's membership convention.
DiscreteMeasure restrict(const DiscreteMeasure& mu, const Cube& q);
/// Indices of the atoms of mu inside q, in atom order.
std::vector<std::size_t> atoms_in(const DiscreteMeasure& mu, const Cube& q);
/// Mass of μ⌊Q without materializing the restriction.
double mass_in(const DiscreteMeasure& mu, const Cube& q);

/// Smallest closed cube (sup-norm) containing every atom, centered on the
/// bounding box. Throws EmptyMeasure.
Cube bounding_cube(const DiscreteMeasure& mu);
/// Largest coordinate-wise spread max_i (max x_i - min x_i) of the support.
double sup_diameter(const DiscreteMeasure& mu);
double min_pairwise_distance(const DiscreteMeasure& mu);

/// One occupied cell of the lattice {offset + a * side}^d.
struct LatticeCell {
  std::vector<std::int64_t> index;
  Cube cube;
  std::vector<std::size_t> atoms;
  double mass = 0.0;
};

/// Occupied half-open cells of the lattice with spacing `side` shifted by
/// `offset` on every axis, sorted by lattice index. Each atom lands in exactly
/// one cell, and membership agrees with Cube::contains on the returned cube.
std::vector<LatticeCell> occupied_cells(const DiscreteMeasure& mu, double side, double offset = 0.0);

/// Scaling sequence {λ_n} and construction depth for the four-corner planar
/// Cantor set.
struct CantorSpec {
  std::vector<double> lambdas;
  int depth = 0;

  /// λ_n = lambda for n = 1..depth.
  static CantorSpec constant(double lambda, int depth);
  /// Throws InvalidSpec unless 0 < λ_n <= 1/2, 0 <= depth <= lambdas.size()
  /// and depth <= max_cantor_depth.
  void validate() const;
  /// σ_k = λ_1 ⋯ λ_k (σ_0 = 1).
  double sigma(int k) const;
};

inline constexpr int max_cantor_depth = 10;

/// Depth-n approximation of the Cantor probability measure: one atom at the
/// center of each generation-n square with weight 4^-n. Squares are produced
/// parent-major with children in quadrant order (lower-left, lower-right,
/// upper-left, upper-right).
DiscreteMeasure generate_cantor(const CantorSpec& spec);
/// The 4^k closed generation-k squares (k <= spec.depth), same ordering.
std::vector<Cube> cantor_squares(const CantorSpec& spec, int generation);

/// Midpoint rule for arclength on [a,b] x {0}: N atoms of weight (b-a)/N.
DiscreteMeasure generate_segment(double a, double b, int n);
/// N equally spaced atoms on the circle of given radius, weight 2πr/N.
DiscreteMeasure generate_circle(double radius, int n);
/// Cell centers of the M x M grid on [-r, r]^2 that fall in the open disc,
/// weight (2r/M)^2.
DiscreteMeasure generate_disc(double radius, int m);

}  // namespace cauchylab
