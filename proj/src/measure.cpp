#include "cauchylab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "cauchylab/error.hpp"

namespace cauchylab {

namespace {

void require_finite(std::span<const double> coords) {
  for (double c : coords) {
    if (!std::isfinite(c)) throw Error(Errc::invalid_argument, "point coordinate is not finite");
  }
}

}  // namespace

// ---------------------------------------------------------------- Point

Point::Point(std::initializer_list<double> coords) : coords_(coords) { require_finite(coords_); }

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) { require_finite(coords_); }

Point::Point(std::span<const double> coords) : coords_(coords.begin(), coords.end()) {
  require_finite(coords_);
}

// ---------------------------------------------------------------- Cube

Cube::Cube(std::vector<double> lower, std::vector<double> upper, double side, bool half_open)
    : lower_(std::move(lower)), upper_(std::move(upper)), side_(side), half_open_(half_open) {
  if (!(side_ > 0.0) || !std::isfinite(side_)) {
    throw Error(Errc::invalid_argument, "cube side must be positive and finite");
  }
  if (lower_.size() != upper_.size() || lower_.empty()) {
    throw Error(Errc::dimension_mismatch, "cube bounds have inconsistent dimension");
  }
}

Cube Cube::centered(const Point& center, double side, bool half_open) {
  std::vector<double> lo(center.dim()), hi(center.dim());
  for (std::size_t i = 0; i < center.dim(); ++i) {
    lo[i] = center[i] - side / 2;
    hi[i] = center[i] + side / 2;
  }
  return Cube(std::move(lo), std::move(hi), side, half_open);
}

Cube Cube::from_corner(const Point& lower, double side, bool half_open) {
  std::vector<double> lo(lower.coords().begin(), lower.coords().end()), hi(lower.dim());
  for (std::size_t i = 0; i < lower.dim(); ++i) hi[i] = lower[i] + side;
  return Cube(std::move(lo), std::move(hi), side, half_open);
}

Cube Cube::from_bounds(std::vector<double> lower, std::vector<double> upper, double side,
                       bool half_open) {
  return Cube(std::move(lower), std::move(upper), side, half_open);
}

Point Cube::center() const {
  std::vector<double> c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = lower_[i] + (upper_[i] - lower_[i]) / 2;
  return Point(std::move(c));
}

bool Cube::contains(std::span<const double> x) const {
  if (x.size() != dim()) throw Error(Errc::dimension_mismatch, "point and cube dimensions differ");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower_[i]) return false;
    if (half_open_ ? x[i] >= upper_[i] : x[i] > upper_[i]) return false;
  }
  return true;
}

double Cube::distance(const Cube& other) const {
  if (other.dim() != dim()) throw Error(Errc::dimension_mismatch, "cube dimensions differ");
  double gap = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    gap = std::max({gap, other.lower_[i] - upper_[i], lower_[i] - other.upper_[i]});
  }
  return gap;
}

bool Cube::overlaps(const Cube& other) const {
  if (other.dim() != dim()) throw Error(Errc::dimension_mismatch, "cube dimensions differ");
  for (std::size_t i = 0; i < dim(); ++i) {
    if (other.lower_[i] >= upper_[i] || lower_[i] >= other.upper_[i]) return false;
  }
  return true;
}

std::vector<Cube> Cube::dyadic_children() const {
  const std::size_t d = dim();
  std::vector<double> mid(d);
  for (std::size_t i = 0; i < d; ++i) mid[i] = lower_[i] + (upper_[i] - lower_[i]) / 2;
  std::vector<Cube> children;
  children.reserve(std::size_t{1} << d);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    std::vector<double> lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
      const bool upper_half = (mask >> i) & 1u;
      lo[i] = upper_half ? mid[i] : lower_[i];
      hi[i] = upper_half ? upper_[i] : mid[i];
    }
    children.push_back(Cube(std::move(lo), std::move(hi), side_ / 2, true));
  }
  return children;
}

// ---------------------------------------------------------------- DiscreteMeasure

DiscreteMeasure::DiscreteMeasure(const std::vector<Point>& points, std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (points.size() != weights_.size()) {
    throw Error(Errc::length_mismatch, "points and weights differ in length");
  }
  dim_ = points.empty() ? 0 : points.front().dim();
  coords_.reserve(points.size() * dim_);
  for (const Point& p : points) {
    if (p.dim() != dim_) throw Error(Errc::dimension_mismatch, "points of mixed dimension");
    coords_.insert(coords_.end(), p.coords().begin(), p.coords().end());
  }
  validate();
  total_mass_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

DiscreteMeasure::DiscreteMeasure(std::size_t dim, std::vector<double> coords,
                                 std::vector<double> weights)
    : dim_(dim), coords_(std::move(coords)), weights_(std::move(weights)) {
  if (coords_.size() != dim_ * weights_.size()) {
    throw Error(Errc::length_mismatch, "coordinate array does not match dim * weights");
  }
  require_finite(coords_);
  validate();
  total_mass_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

DiscreteMeasure::DiscreteMeasure(Trusted, std::size_t dim, std::vector<double> coords,
                                 std::vector<double> weights)
    : dim_(dim), coords_(std::move(coords)), weights_(std::move(weights)) {
  total_mass_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

void DiscreteMeasure::validate() const {
  if (!weights_.empty() && dim_ == 0) throw Error(Errc::dimension_mismatch, "points have dimension 0");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw Error(Errc::nonpositive_weight,
                  "weight " + std::to_string(i) + " is not a positive finite number");
    }
  }
  std::vector<std::size_t> order(weights_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(coords_.begin() + a * dim_, coords_.begin() + (a + 1) * dim_,
                                        coords_.begin() + b * dim_, coords_.begin() + (b + 1) * dim_);
  };
  std::sort(order.begin(), order.end(), less);
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (std::equal(coords_.begin() + order[k - 1] * dim_, coords_.begin() + (order[k - 1] + 1) * dim_,
                   coords_.begin() + order[k] * dim_)) {
      throw Error(Errc::duplicate_point, "atoms " + std::to_string(order[k - 1]) + " and " +
                                             std::to_string(order[k]) + " coincide");
    }
  }
}

std::vector<Point> DiscreteMeasure::points() const {
  std::vector<Point> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.emplace_back(point(i));
  return out;
}

DiscreteMeasure DiscreteMeasure::subset(std::span<const std::size_t> indices) const {
  std::vector<double> c;
  std::vector<double> w;
  c.reserve(indices.size() * dim_);
  w.reserve(indices.size());
  for (std::size_t i : indices) {
    auto p = point(i);
    c.insert(c.end(), p.begin(), p.end());
    w.push_back(weights_[i]);
  }
  return DiscreteMeasure(Trusted{}, dim_, std::move(c), std::move(w));
}

DiscreteMeasure DiscreteMeasure::scaled_weights(double t) const {
  if (!(t > 0.0)) throw Error(Errc::nonpositive_weight, "weight scale must be positive");
  std::vector<double> w(weights_);
  for (double& x : w) x *= t;
  return DiscreteMeasure(Trusted{}, dim_, coords_, std::move(w));
}

// ---------------------------------------------------------------- restriction

std::vector<std::size_t> atoms_in(const DiscreteMeasure& mu, const Cube& q) {
  if (!mu.empty() && mu.dim() != q.dim()) {
    throw Error(Errc::dimension_mismatch, "measure and cube dimensions differ");
  }
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (q.contains(mu.point(i))) idx.push_back(i);
  }
  return idx;
}

DiscreteMeasure restrict(const DiscreteMeasure& mu, const Cube& q) {
  const auto idx = atoms_in(mu, q);
  return mu.subset(idx);
}

double mass_in(const DiscreteMeasure& mu, const Cube& q) {
  double m = 0.0;
  for (std::size_t i : atoms_in(mu, q)) m += mu.weight(i);
  return m;
}

Cube bounding_cube(const DiscreteMeasure& mu) {
  if (mu.empty()) throw Error(Errc::empty_measure, "bounding cube of an empty measure");
  const std::size_t d = mu.dim();
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      lo[a] = std::min(lo[a], mu.coord(i, a));
      hi[a] = std::max(hi[a], mu.coord(i, a));
    }
  }
  double side = 0.0;
  for (std::size_t a = 0; a < d; ++a) side = std::max(side, hi[a] - lo[a]);
  if (side == 0.0) throw Error(Errc::invalid_argument, "support is a single point");
  std::vector<double> c(d);
  for (std::size_t a = 0; a < d; ++a) c[a] = lo[a] + (hi[a] - lo[a]) / 2;
  // Widen the box on the short axes; keep the exact extremes on the long one.
  std::vector<double> blo(d), bhi(d);
  for (std::size_t a = 0; a < d; ++a) {
    blo[a] = std::min(lo[a], c[a] - side / 2);
    bhi[a] = std::max(hi[a], c[a] + side / 2);
  }
  return Cube::from_bounds(std::move(blo), std::move(bhi), side, false);
}

double sup_diameter(const DiscreteMeasure& mu) {
  if (mu.empty()) return 0.0;
  double diam = 0.0;
  for (std::size_t a = 0; a < mu.dim(); ++a) {
    double lo = mu.coord(0, a), hi = lo;
    for (std::size_t i = 1; i < mu.size(); ++i) {
      lo = std::min(lo, mu.coord(i, a));
      hi = std::max(hi, mu.coord(i, a));
    }
    diam = std::max(diam, hi - lo);
  }
  return diam;
}

double min_pairwise_distance(const DiscreteMeasure& mu) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = i + 1; j < mu.size(); ++j) {
      double s = 0.0;
      for (std::size_t a = 0; a < mu.dim(); ++a) {
        const double t = mu.coord(i, a) - mu.coord(j, a);
        s += t * t;
      }
      best = std::min(best, s);
    }
  }
  return std::sqrt(best);
}

std::vector<LatticeCell> occupied_cells(const DiscreteMeasure& mu, double side, double offset) {
  if (!(side > 0.0)) throw Error(Errc::invalid_scales, "lattice side must be positive");
  const std::size_t d = mu.dim();
  std::map<std::vector<std::int64_t>, LatticeCell> cells;
  std::vector<std::int64_t> key(d);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      const double x = mu.coord(i, a);
      auto k = static_cast<std::int64_t>(std::floor((x - offset) / side));
      // Snap to the cell whose stored bounds actually contain x.
      while (x < offset + static_cast<double>(k) * side) --k;
      while (x >= offset + static_cast<double>(k + 1) * side) ++k;
      key[a] = k;
    }
    auto it = cells.find(key);
    if (it == cells.end()) {
      std::vector<double> lo(d), hi(d);
      for (std::size_t a = 0; a < d; ++a) {
        lo[a] = offset + static_cast<double>(key[a]) * side;
        hi[a] = offset + static_cast<double>(key[a] + 1) * side;
      }
      it = cells.emplace(key, LatticeCell{key, Cube::from_bounds(lo, hi, side, true), {}, 0.0}).first;
    }
    it->second.atoms.push_back(i);
    it->second.mass += mu.weight(i);
  }
  std::vector<LatticeCell> out;
  out.reserve(cells.size());
  for (auto& [k, cell] : cells) out.push_back(std::move(cell));
  return out;
}

// ---------------------------------------------------------------- Cantor

CantorSpec CantorSpec::constant(double lambda, int depth) {
  return CantorSpec{std::vector<double>(static_cast<std::size_t>(std::max(depth, 0)), lambda), depth};
}

void CantorSpec::validate() const {
  if (depth < 0) throw Error(Errc::invalid_spec, "negative Cantor depth");
  if (static_cast<std::size_t>(depth) > lambdas.size()) {
    throw Error(Errc::invalid_spec, "depth exceeds the number of scaling factors");
  }
  if (depth > max_cantor_depth) {
    throw Error(Errc::invalid_spec, "depth " + std::to_string(depth) + " exceeds the memory budget (max " +
                                        std::to_string(max_cantor_depth) + ")");
  }
  for (double l : lambdas) {
    if (!(l > 0.0 && l <= 0.5)) throw Error(Errc::invalid_spec, "scaling factor outside (0, 1/2]");
  }
}

double CantorSpec::sigma(int k) const {
  if (k < 0 || static_cast<std::size_t>(k) > lambdas.size()) {
    throw Error(Errc::invalid_spec, "generation outside the scaling sequence");
  }
  double s = 1.0;
  for (int j = 0; j < k; ++j) s *= lambdas[static_cast<std::size_t>(j)];
  return s;
}

namespace {

struct Square {
  double x, y, side;
};

std::vector<Square> cantor_generation(const CantorSpec& spec, int generation) {
  std::vector<Square> squares{{0.0, 0.0, 1.0}};
  for (int n = 0; n < generation; ++n) {
    const double lambda = spec.lambdas[static_cast<std::size_t>(n)];
    std::vector<Square> next;
    next.reserve(squares.size() * 4);
    for (const Square& s : squares) {
      const double t = s.side * lambda;
      const double far = s.side - t;
      next.push_back({s.x, s.y, t});
      next.push_back({s.x + far, s.y, t});
      next.push_back({s.x, s.y + far, t});
      next.push_back({s.x + far, s.y + far, t});
    }
    squares = std::move(next);
  }
  return squares;
}

}  // namespace

DiscreteMeasure generate_cantor(const CantorSpec& spec) {
  spec.validate();
  const auto squares = cantor_generation(spec, spec.depth);
  const double w = std::ldexp(1.0, -2 * spec.depth);
  std::vector<double> coords;
  coords.reserve(squares.size() * 2);
  for (const Square& s : squares) {
    coords.push_back(s.x + s.side / 2);
    coords.push_back(s.y + s.side / 2);
  }
  return DiscreteMeasure(2, std::move(coords), std::vector<double>(squares.size(), w));
}

std::vector<Cube> cantor_squares(const CantorSpec& spec, int generation) {
  spec.validate();
  if (generation < 0 || generation > spec.depth) {
    throw Error(Errc::invalid_spec, "generation outside [0, depth]");
  }
  std::vector<Cube> out;
  for (const Square& s : cantor_generation(spec, generation)) {
    out.push_back(Cube::from_bounds({s.x, s.y}, {s.x + s.side, s.y + s.side}, s.side, false));
  }
  return out;
}

// ---------------------------------------------------------------- other generators

DiscreteMeasure generate_segment(double a, double b, int n) {
  if (!(a < b) || n < 1) throw Error(Errc::invalid_argument, "segment needs a < b and N >= 1");
  const double h = (b - a) / n;
  std::vector<double> coords;
  coords.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    coords.push_back(a + (i + 0.5) * h);
    coords.push_back(0.0);
  }
  return DiscreteMeasure(2, std::move(coords), std::vector<double>(static_cast<std::size_t>(n), h));
}

DiscreteMeasure generate_circle(double radius, int n) {
  if (!(radius > 0.0) || n < 3) throw Error(Errc::invalid_argument, "circle needs r > 0 and N >= 3");
  std::vector<double> coords;
  coords.reserve(2 * static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * k / n;
    coords.push_back(radius * std::cos(t));
    coords.push_back(radius * std::sin(t));
  }
  const double w = 2.0 * std::numbers::pi * radius / n;
  return DiscreteMeasure(2, std::move(coords), std::vector<double>(static_cast<std::size_t>(n), w));
}

DiscreteMeasure generate_disc(double radius, int m) {
  if (!(radius > 0.0) || m < 1) throw Error(Errc::invalid_argument, "disc needs r > 0 and M >= 1");
  const double h = 2.0 * radius / m;
  std::vector<double> coords;
  for (int iy = 0; iy < m; ++iy) {
    const double y = -radius + (iy + 0.5) * h;
    for (int ix = 0; ix < m; ++ix) {
      const double x = -radius + (ix + 0.5) * h;
      if (x * x + y * y < radius * radius) {
        coords.push_back(x);
        coords.push_back(y);
      }
    }
  }
  const std::size_t count = coords.size() / 2;
  return DiscreteMeasure(2, std::move(coords), std::vector<double>(count, h * h));
}

}  // namespace cauchylab
