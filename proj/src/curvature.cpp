#include "cauchylab/curvature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "cauchylab/error.hpp"
#include "cauchylab/parallel.hpp"

namespace cauchylab {

namespace {

constexpr std::size_t kOuterBlock = 16;

void require_planar(const DiscreteMeasure& mu) {
  if (!mu.empty() && mu.dim() != 2) {
    throw Error(Errc::dimension_mismatch, "Menger curvature needs planar atoms");
  }
}

// Unordered sum over j < k of w_j w_k / R(x_i, x_j, x_k)^2 for j, k != i,
// with atoms ordered by index; x, y, w are the measure's columns.
double pair_sum_about(std::size_t i, const std::vector<double>& x, const std::vector<double>& y,
                      std::span<const double> w) {
  const std::size_t n = w.size();
  const double ax = x[i], ay = y[i];
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    double row = 0.0;
    for (std::size_t k = j + 1; k < n; ++k) {
      if (k == i) continue;
      row += w[k] * inverse_circumradius_sq(ax, ay, x[j], y[j], x[k], y[k]);
    }
    acc += w[j] * row;
  }
  return acc;
}

}  // namespace

double circumradius(const Point& a0, const Point& b0, const Point& c0) {
  if (a0.dim() != 2 || b0.dim() != 2 || c0.dim() != 2) {
    throw Error(Errc::dimension_mismatch, "circumradius needs planar points");
  }
  if (a0 == b0 || b0 == c0 || a0 == c0) throw Error(Errc::degenerate_triple, "two points coincide");
  // Canonical vertex order makes the result bit-identical under permutations.
  std::array<const Point*, 3> v{&a0, &b0, &c0};
  std::sort(v.begin(), v.end(), [](const Point* p, const Point* q) {
    return std::lexicographical_compare(p->coords().begin(), p->coords().end(), q->coords().begin(),
                                        q->coords().end());
  });
  const Point &a = *v[0], &b = *v[1], &c = *v[2];
  const double inv = inverse_circumradius_sq(a[0], a[1], b[0], b[1], c[0], c[1]);
  if (inv == 0.0) return std::numeric_limits<double>::infinity();
  const double ab = std::hypot(b[0] - a[0], b[1] - a[1]);
  const double bc = std::hypot(c[0] - b[0], c[1] - b[1]);
  const double ca = std::hypot(a[0] - c[0], a[1] - c[1]);
  const double cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  return ab * bc * ca / (2.0 * std::abs(cross));
}

double menger_c2_point(const DiscreteMeasure& mu, const Point& z) {
  require_planar(mu);
  if (z.dim() != 2) throw Error(Errc::dimension_mismatch, "evaluation point must be planar");
  const std::size_t n = mu.size();
  std::vector<std::size_t> others;
  others.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(mu.coord(i, 0) == z[0] && mu.coord(i, 1) == z[1])) others.push_back(i);
  }
  const double zx = z[0], zy = z[1];
  const double unordered = blocked_sum<double>(others.size(), kOuterBlock, [&](std::size_t b, std::size_t e) {
    double acc = 0.0;
    for (std::size_t p = b; p < e; ++p) {
      const std::size_t j = others[p];
      double row = 0.0;
      for (std::size_t q = p + 1; q < others.size(); ++q) {
        const std::size_t k = others[q];
        row += mu.weight(k) *
               inverse_circumradius_sq(zx, zy, mu.coord(j, 0), mu.coord(j, 1), mu.coord(k, 0), mu.coord(k, 1));
      }
      acc += mu.weight(j) * row;
    }
    return acc;
  });
  return 2.0 * unordered;
}

std::uint64_t triple_work(std::size_t n) noexcept {
  const auto m = static_cast<std::uint64_t>(n);
  return n < 3 ? 0 : m * (m - 1) * (m - 2) / 6;
}

CurvatureResult menger_c2(const DiscreteMeasure& mu, bool with_pointwise) {
  require_planar(mu);
  const std::size_t n = mu.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = mu.coord(i, 0);
    y[i] = mu.coord(i, 1);
  }
  const auto w = mu.weights();

  CurvatureResult result;
  result.triple_count = n < 3 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) * (n - 2);

  if (with_pointwise) {
    std::vector<double> pointwise(n, 0.0);
    for_each_block(n, kOuterBlock, [&](std::size_t b, std::size_t e, std::size_t) {
      for (std::size_t i = b; i < e; ++i) pointwise[i] = 2.0 * pair_sum_about(i, x, y, w);
    });
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += w[i] * pointwise[i];
    result.total = total;
    result.pointwise = std::move(pointwise);
    return result;
  }

  // Each geometric triple i < j < k once, times the 3! orderings.
  const double unordered = blocked_sum<double>(n, kOuterBlock, [&](std::size_t b, std::size_t e) {
    double acc = 0.0;
    for (std::size_t i = b; i < e; ++i) {
      const double ax = x[i], ay = y[i];
      double outer = 0.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double bx = x[j], by = y[j];
        double row = 0.0;
        for (std::size_t k = j + 1; k < n; ++k) {
          row += w[k] * inverse_circumradius_sq(ax, ay, bx, by, x[k], y[k]);
        }
        outer += w[j] * row;
      }
      acc += w[i] * outer;
    }
    return acc;
  });
  result.total = 6.0 * unordered;
  return result;
}

void validate_scales(std::span<const double> scales) {
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0) || !std::isfinite(scales[i])) {
      throw Error(Errc::invalid_scales, "scales must be positive and finite");
    }
    if (i > 0 && !(scales[i] < scales[i - 1])) {
      throw Error(Errc::invalid_scales, "scales must be strictly decreasing");
    }
  }
}

std::vector<CurvatureRatioEntry> curvature_ratio_scan(const DiscreteMeasure& mu,
                                                      std::span<const double> scales,
                                                      std::uint64_t budget) {
  require_planar(mu);
  if (mu.empty()) throw Error(Errc::empty_measure, "curvature scan of an empty measure");
  validate_scales(scales);

  std::vector<std::vector<LatticeCell>> levels;
  std::uint64_t work = 0;
  for (double s : scales) {
    levels.push_back(occupied_cells(mu, s));
    for (const auto& cell : levels.back()) work += triple_work(cell.atoms.size());
  }
  if (work > budget) {
    throw Error(Errc::budget_exceeded, "curvature scan needs " + std::to_string(work) +
                                           " triple evaluations (budget " + std::to_string(budget) + ")");
  }

  std::vector<CurvatureRatioEntry> out;
  for (std::size_t l = 0; l < scales.size(); ++l) {
    CurvatureRatioEntry entry{scales[l], 0.0, levels[l].size()};
    for (const auto& cell : levels[l]) {
      if (cell.atoms.size() < 3) continue;
      const auto sub = mu.subset(cell.atoms);
      entry.max_ratio = std::max(entry.max_ratio, menger_c2(sub).total / cell.mass);
    }
    out.push_back(entry);
  }
  return out;
}

}  // namespace cauchylab
