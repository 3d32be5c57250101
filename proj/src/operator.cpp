#include "cauchylab/operator.hpp"

#include <cmath>
#include <random>

#include "cauchylab/error.hpp"
#include "cauchylab/parallel.hpp"

namespace cauchylab {

namespace {

constexpr std::size_t kRowBlock = 32;

// Component c of K(x_i, x_j) for i != j, from the displacement x_i - x_j.
void kernel_components(const KernelId& k, const double* diff, std::size_t dim, Complex* out) {
  double s = 0.0;
  for (std::size_t a = 0; a < dim; ++a) s += diff[a] * diff[a];
  switch (k.kind()) {
    case KernelId::Kind::cauchy:
      out[0] = Complex(diff[0] / s, -diff[1] / s);
      break;
    case KernelId::Kind::im_cauchy:
      out[0] = Complex(diff[1] / s, 0.0);
      break;
    case KernelId::Kind::riesz: {
      const double scale = std::pow(std::sqrt(s), -(k.n() + 1));
      for (std::size_t a = 0; a < dim; ++a) out[a] = Complex(diff[a] * scale, 0.0);
      break;
    }
  }
}

void require_compatible(const DiscreteMeasure& mu, const KernelId& k) {
  if (mu.empty()) throw Error(Errc::empty_measure, "operator on an empty measure");
  if (mu.dim() != static_cast<std::size_t>(k.dim())) {
    throw Error(Errc::dimension_mismatch, "kernel " + k.name() + " expects dimension " +
                                              std::to_string(k.dim()) + ", measure has " +
                                              std::to_string(mu.dim()));
  }
}

// Evaluates K for the unordered pair (i, j), i < j, as stored at [i][j];
// [j][i] is its exact negation.
class PairKernel {
 public:
  PairKernel(const DiscreteMeasure& mu, const KernelId& k) : mu_(mu), k_(k), diff_(mu.dim()) {}

  // Writes K(x_i, x_j) into out (components()) and returns |x_i - x_j|.
  double eval(std::size_t i, std::size_t j, Complex* out) {
    const std::size_t lo = std::min(i, j), hi = std::max(i, j);
    double s = 0.0;
    for (std::size_t a = 0; a < mu_.dim(); ++a) {
      diff_[a] = mu_.coord(lo, a) - mu_.coord(hi, a);
      s += diff_[a] * diff_[a];
    }
    kernel_components(k_, diff_.data(), mu_.dim(), out);
    if (i > j) {
      for (std::size_t c = 0; c < k_.components(); ++c) out[c] = -out[c];
    }
    return std::sqrt(s);
  }

 private:
  const DiscreteMeasure& mu_;
  KernelId k_;
  std::vector<double> diff_;
};

OperatorMatrix empty_operator(const DiscreteMeasure& mu, const KernelId& k, double eps) {
  OperatorMatrix t;
  t.kernel = k;
  t.epsilon = eps;
  const auto n = static_cast<Eigen::Index>(mu.size());
  t.components.assign(k.components(), Eigen::MatrixXcd::Zero(n, n));
  t.weights = Eigen::Map<const Eigen::VectorXd>(mu.weights().data(), n);
  return t;
}

// Fills entries (i, j) for which keep(i, j, distance) holds.
template <class Keep>
OperatorMatrix build_masked(const DiscreteMeasure& mu, const KernelId& k, double eps, Keep keep) {
  require_compatible(mu, k);
  OperatorMatrix t = empty_operator(mu, k, eps);
  const std::size_t n = mu.size();
  const std::size_t nc = k.components();
  for_each_block(n, kRowBlock, [&](std::size_t begin, std::size_t end, std::size_t) {
    PairKernel pk(mu, k);
    std::vector<Complex> value(nc);
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double dist = pk.eval(i, j, value.data());
        if (!keep(i, j, dist)) continue;
        for (std::size_t c = 0; c < nc; ++c) {
          t.components[c](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value[c];
        }
      }
    }
  });
  return t;
}

Eigen::VectorXcd power_seed(Eigen::Index n) {
  std::mt19937_64 rng(0x5eedc0ffeeULL);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = 1.0 + u(rng);
    const double im = u(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

}  // namespace

// ---------------------------------------------------------------- KernelId

KernelId KernelId::riesz(int n, int d) {
  if (d < 1 || n < 1 || n > d) throw Error(Errc::invalid_argument, "Riesz kernel needs 1 <= n <= d");
  return KernelId(Kind::riesz, n, d);
}

std::string KernelId::name() const {
  switch (kind_) {
    case Kind::cauchy: return "cauchy";
    case Kind::im_cauchy: return "im_cauchy";
    case Kind::riesz: return "riesz:" + std::to_string(n_) + ":" + std::to_string(d_);
  }
  return "unknown";
}

KernelId KernelId::parse(const std::string& text) {
  if (text == "cauchy") return cauchy();
  if (text == "im_cauchy") return im_cauchy();
  if (text.rfind("riesz:", 0) == 0) {
    const auto colon = text.find(':', 6);
    if (colon != std::string::npos) {
      try {
        return riesz(std::stoi(text.substr(6, colon - 6)), std::stoi(text.substr(colon + 1)));
      } catch (const std::logic_error&) {
      }
    }
  }
  throw Error(Errc::invalid_argument, "unknown kernel '" + text + "' (cauchy, im_cauchy, riesz:n:d)");
}

std::vector<Complex> kernel_eval(const KernelId& k, std::span<const double> z, std::span<const double> w) {
  if (z.size() != static_cast<std::size_t>(k.dim()) || w.size() != z.size()) {
    throw Error(Errc::dimension_mismatch, "points do not match kernel " + k.name());
  }
  std::vector<double> diff(z.size());
  bool same = true;
  for (std::size_t a = 0; a < z.size(); ++a) {
    diff[a] = z[a] - w[a];
    same = same && diff[a] == 0.0;
  }
  if (same) throw Error(Errc::coincident_points, "kernel evaluated on the diagonal");
  std::vector<Complex> out(k.components());
  kernel_components(k, diff.data(), diff.size(), out.data());
  return out;
}

// ---------------------------------------------------------------- OperatorMatrix

bool OperatorMatrix::is_zero() const {
  for (const auto& m : components) {
    if (!m.isZero(0.0)) return false;
  }
  return true;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  if (other.components.size() != components.size() || other.size() != size()) {
    throw Error(Errc::length_mismatch, "operator shapes differ");
  }
  for (std::size_t c = 0; c < components.size(); ++c) components[c] += other.components[c];
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
  if (other.components.size() != components.size() || other.size() != size()) {
    throw Error(Errc::length_mismatch, "operator shapes differ");
  }
  for (std::size_t c = 0; c < components.size(); ++c) components[c] -= other.components[c];
  return *this;
}

OperatorMatrix build_truncated(const DiscreteMeasure& mu, const KernelId& k, double eps) {
  if (!(eps >= 0.0)) throw Error(Errc::invalid_argument, "truncation radius must be >= 0");
  return build_masked(mu, k, eps, [eps](std::size_t, std::size_t, double dist) { return dist > eps; });
}

OperatorMatrix build_band(const DiscreteMeasure& mu, const KernelId& k, double eps1, double eps2) {
  if (!(eps1 >= 0.0) || !(eps1 <= eps2)) throw Error(Errc::invalid_argument, "need 0 <= eps1 <= eps2");
  return build_masked(mu, k, eps1,
                      [eps1, eps2](std::size_t, std::size_t, double dist) { return dist > eps1 && dist <= eps2; });
}

std::vector<Eigen::VectorXcd> apply(const OperatorMatrix& t, const Eigen::VectorXcd& f) {
  if (static_cast<std::size_t>(f.size()) != t.size()) {
    throw Error(Errc::length_mismatch, "vector length " + std::to_string(f.size()) + " != operator size " +
                                           std::to_string(t.size()));
  }
  const Eigen::VectorXcd weighted = f.cwiseProduct(t.weights.cast<Complex>());
  std::vector<Eigen::VectorXcd> out;
  out.reserve(t.components.size());
  for (const auto& m : t.components) out.emplace_back(m * weighted);
  return out;
}

double l2_norm(const std::vector<Eigen::VectorXcd>& f, const Eigen::VectorXd& weights) {
  double s = 0.0;
  for (const auto& v : f) s += v.cwiseAbs2().dot(weights);
  return std::sqrt(s);
}

NormResult operator_norm(const OperatorMatrix& t, double tol, int max_iter) {
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
  const auto n = static_cast<Eigen::Index>(t.size());
  NormResult result;
  if (n == 0 || t.is_zero()) return result;

  const Eigen::VectorXcd sqrt_w = t.weights.cwiseSqrt().cast<Complex>();
  Eigen::VectorXcd v = power_seed(n);
  Eigen::VectorXcd y(n), u(n);
  // Slowly converging runs switch to the explicit Gram matrix B* B: one
  // Hermitian product per step instead of two dense ones. The switch point
  // keeps the one-off O(N^3) cost below the work already spent.
  const int gram_after = static_cast<int>(std::max<Eigen::Index>(16, n / 16));
  Eigen::MatrixXcd gram;
  double previous = -1.0;
  for (int it = 1; it <= max_iter; ++it) {
    if (it == gram_after) {
      gram = Eigen::MatrixXcd::Zero(n, n);
      const Eigen::MatrixXcd scale = (sqrt_w * sqrt_w.transpose()).eval();
      for (const auto& k : t.components) {
        const Eigen::MatrixXcd b = k.cwiseProduct(scale);
        gram.selfadjointView<Eigen::Lower>().rankUpdate(b.adjoint());
      }
    }
    // y = B* B v with B = S K S, S = diag(sqrt w).
    if (gram.size() != 0) {
      y.noalias() = gram.selfadjointView<Eigen::Lower>() * v;
    } else {
      y.setZero();
      const Eigen::VectorXcd sv = sqrt_w.cwiseProduct(v);
      for (const auto& k : t.components) {
        u.noalias() = k * sv;
        u = u.cwiseProduct(sqrt_w).cwiseProduct(sqrt_w);
        y.noalias() += k.adjoint() * u;
      }
      y = y.cwiseProduct(sqrt_w);
    }
    const double rayleigh = v.dot(y).real();
    const double ny = y.norm();
    result.iterations = it;
    result.value = std::sqrt(std::max(rayleigh, 0.0));
    if (ny == 0.0) return result;
    if (previous >= 0.0 && std::abs(rayleigh - previous) <= tol * rayleigh) {
      result.converged = true;
      return result;
    }
    previous = rayleigh;
    v = y / ny;
  }
  result.converged = false;
  return result;
}

NormResult truncation_gap(const DiscreteMeasure& mu, const KernelId& k, double eps1, double eps2, double tol,
                          int max_iter) {
  if (!(eps1 >= 0.0) || !(eps1 <= eps2)) throw Error(Errc::invalid_argument, "need 0 <= eps1 <= eps2");
  if (eps1 == eps2) return {};
  return operator_norm(build_band(mu, k, eps1, eps2), tol, max_iter);
}

// ---------------------------------------------------------------- shells

Cube shell_base(const DiscreteMeasure& mu) {
  if (mu.empty()) throw Error(Errc::empty_measure, "shell base of an empty measure");
  const double diam = sup_diameter(mu);
  double side = 1.0;
  while (side <= 2.0 * diam) side *= 2.0;
  while (side / 2.0 > 2.0 * diam && diam > 0.0) side /= 2.0;
  std::vector<double> lo(mu.dim()), hi(mu.dim());
  for (std::size_t a = 0; a < mu.dim(); ++a) {
    lo[a] = hi[a] = mu.coord(0, a);
    for (std::size_t i = 1; i < mu.size(); ++i) {
      lo[a] = std::min(lo[a], mu.coord(i, a));
      hi[a] = std::max(hi[a], mu.coord(i, a));
    }
  }
  std::vector<double> c(mu.dim());
  for (std::size_t a = 0; a < mu.dim(); ++a) c[a] = lo[a] + (hi[a] - lo[a]) / 2;
  return Cube::centered(Point(std::move(c)), side, true);
}

namespace {

// x_k in the half-open square of side s centered at x_i.
bool in_centered_square(const DiscreteMeasure& mu, std::size_t i, std::size_t k, double s) {
  for (std::size_t a = 0; a < mu.dim(); ++a) {
    const double c = mu.coord(i, a), x = mu.coord(k, a);
    if (x < c - s / 2 || x >= c + s / 2) return false;
  }
  return true;
}

}  // namespace

OperatorMatrix shell_operator(const DiscreteMeasure& mu, const Cube& base, int j) {
  if (j < 0) throw Error(Errc::invalid_level, "shell level must be >= 0");
  const double outer = std::ldexp(base.side(), -j);
  const double inner = std::ldexp(base.side(), -(j + 1));
  return build_masked(mu, KernelId::cauchy(), 0.0, [&](std::size_t i, std::size_t k, double) {
    return in_centered_square(mu, i, k, outer) && !in_centered_square(mu, i, k, inner);
  });
}

OperatorMatrix partial_sum_operator(const DiscreteMeasure& mu, const Cube& base, int levels) {
  if (levels < 0) throw Error(Errc::invalid_level, "number of shells must be >= 0");
  require_compatible(mu, KernelId::cauchy());
  OperatorMatrix sum = empty_operator(mu, KernelId::cauchy(), 0.0);
  for (int j = 0; j < levels; ++j) sum += shell_operator(mu, base, j);
  return sum;
}

// ---------------------------------------------------------------- indicator images

namespace {

double indicator_image_sq(const DiscreteMeasure& sub, const KernelId& k) {
  const std::size_t n = sub.size();
  const std::size_t nc = k.components();
  return blocked_sum<double>(n, kRowBlock, [&](std::size_t begin, std::size_t end) {
    PairKernel pk(sub, k);
    std::vector<Complex> value(nc), row(nc);
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      std::fill(row.begin(), row.end(), Complex{});
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        pk.eval(i, j, value.data());
        for (std::size_t c = 0; c < nc; ++c) row[c] += value[c] * sub.weight(j);
      }
      double r2 = 0.0;
      for (const Complex& r : row) r2 += std::norm(r);
      acc += r2 * sub.weight(i);
    }
    return acc;
  });
}

}  // namespace

double indicator_image_norm(const DiscreteMeasure& mu, const Cube& q, const KernelId& k) {
  const auto sub = restrict(mu, q);
  if (sub.empty()) throw Error(Errc::empty_cube, "cube holds no atoms");
  require_compatible(sub, k);
  return std::sqrt(indicator_image_sq(sub, k));
}

double pair_correlation(const DiscreteMeasure& mu, const Cube& qp, const Cube& qpp) {
  require_compatible(mu, KernelId::cauchy());
  if (qp.overlaps(qpp)) throw Error(Errc::overlapping_cubes, "pairing cubes must be disjoint");
  const auto src = atoms_in(mu, qp);
  const auto dst = atoms_in(mu, qpp);
  if (src.empty() || dst.empty()) throw Error(Errc::empty_cube, "pairing cube holds no atoms");
  double mass_src = 0.0, mass_dst = 0.0;
  for (std::size_t j : src) mass_src += mu.weight(j);
  for (std::size_t i : dst) mass_dst += mu.weight(i);
  PairKernel pk(mu, KernelId::cauchy());
  Complex value;
  Complex total{};
  for (std::size_t i : dst) {
    Complex row{};
    for (std::size_t j : src) {
      if (i == j) continue;
      pk.eval(i, j, &value);
      row += value * mu.weight(j);
    }
    total += row * mu.weight(i);
  }
  return std::abs(total) / std::sqrt(mass_src * mass_dst);
}

T1Quantities t1_quantities(const DiscreteMeasure& mu, const Cube& base, int levels, std::size_t min_atoms) {
  if (levels < 0) throw Error(Errc::invalid_level, "level must be >= 0");
  if (min_atoms < 2) throw Error(Errc::invalid_argument, "min_atoms must be >= 2");
  require_compatible(mu, KernelId::cauchy());
  T1Quantities out;
  out.max_side = std::ldexp(base.side(), -levels);
  // Every occupied lattice cell of side <= 2^-N l(base) meets Q_N(z) for any of
  // its own atoms z, so the sup runs over all occupied cells at those sides.
  for (double side = out.max_side;; side /= 2.0) {
    bool any = false;
    for (const auto& cell : occupied_cells(mu, side)) {
      if (cell.atoms.size() < min_atoms) continue;
      any = true;
      ++out.cubes;
      out.density_sup = std::max(out.density_sup, cell.mass / side);
      const auto sub = mu.subset(cell.atoms);
      out.image_sup = std::max(out.image_sup, std::sqrt(indicator_image_sq(sub, KernelId::cauchy()) / cell.mass));
    }
    if (!any) break;
  }
  return out;
}

}  // namespace cauchylab
