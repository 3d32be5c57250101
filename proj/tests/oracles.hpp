#pragma once

// Brute-force reference computations for the unit and acceptance tests. They
// share no code with the library beyond the measure container.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cauchylab/measure.hpp"

namespace oracle {

// 1/R^2 from the law of sines: R = |bc| / (2 sin A), angle A at vertex a.
inline double inv_r2_law_of_sines(double ax, double ay, double bx, double by, double cx, double cy) {
  const double ux = bx - ax, uy = by - ay, vx = cx - ax, vy = cy - ay;
  const double nu = std::hypot(ux, uy), nv = std::hypot(vx, vy);
  const double sin_a = std::abs(ux * vy - uy * vx) / (nu * nv);
  const double bc = std::hypot(cx - bx, cy - by);
  const double longest = std::max({nu, nv, bc});
  const double area = 0.5 * std::abs(ux * vy - uy * vx);
  if (area <= 1e-14 * longest * longest) return 0.0;
  const double r = bc / (2.0 * sin_a);
  return 1.0 / (r * r);
}

// Ordered-triple sum, loops running k-major in reverse index order.
inline double menger_c2_reverse(const cauchylab::DiscreteMeasure& mu) {
  const std::size_t n = mu.size();
  long double total = 0.0L;
  for (std::size_t kk = n; kk-- > 0;) {
    for (std::size_t jj = n; jj-- > 0;) {
      if (jj == kk) continue;
      for (std::size_t ii = n; ii-- > 0;) {
        if (ii == kk || ii == jj) continue;
        total += static_cast<long double>(mu.weight(ii) * mu.weight(jj) * mu.weight(kk)) *
                 inv_r2_law_of_sines(mu.coord(ii, 0), mu.coord(ii, 1), mu.coord(jj, 0), mu.coord(jj, 1),
                                     mu.coord(kk, 0), mu.coord(kk, 1));
      }
    }
  }
  return static_cast<double>(total);
}

// B = W^(1/2) K W^(1/2) for the truncated Cauchy kernel, built entry by entry.
inline Eigen::MatrixXcd weighted_cauchy(const cauchylab::DiscreteMeasure& mu, double eps) {
  const auto n = static_cast<Eigen::Index>(mu.size());
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::complex<double> z(mu.coord(i, 0), mu.coord(i, 1)), w(mu.coord(j, 0), mu.coord(j, 1));
      if (std::abs(z - w) <= eps) continue;
      b(i, j) = std::sqrt(mu.weight(i)) / (z - w) * std::sqrt(mu.weight(j));
    }
  }
  return b;
}

// Largest singular value by a full Jacobi SVD.
inline double max_singular_value(const Eigen::MatrixXcd& b) {
  if (b.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
  return svd.singularValues()(0);
}

}  // namespace oracle
