#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cauchylab/measure.hpp"

namespace cauchylab {

using Complex = std::complex<double>;

/// Which singular kernel an operator uses.
///
///   cauchy     1/(z - w), planar, complex valued
///   riesz      (x - y)/|x - y|^(n+1) in R^d, vector valued (d components)
///   im_cauchy  Im(z - w)/|z - w|^2, planar, real valued
///
/// All three are antisymmetric: K(z, w) = -K(w, z).
class KernelId {
 public:
  enum class Kind { cauchy, riesz, im_cauchy };

  static KernelId cauchy() { return KernelId(Kind::cauchy, 1, 2); }
  static KernelId im_cauchy() { return KernelId(Kind::im_cauchy, 1, 2); }
  /// Throws InvalidArgument unless 1 <= n <= d.
  static KernelId riesz(int n, int d);

  Kind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  int dim() const noexcept { return d_; }
  /// Number of scalar components of the kernel value.
  std::size_t components() const noexcept { return kind_ == Kind::riesz ? static_cast<std::size_t>(d_) : 1; }
  std::string name() const;
  /// Parses "cauchy", "im_cauchy" or "riesz:n:d".
  static KernelId parse(const std::string& text);

  friend bool operator==(const KernelId&, const KernelId&) = default;

 private:
  KernelId(Kind k, int n, int d) : kind_(k), n_(n), d_(d) {}
  Kind kind_;
  int n_;
  int d_;
};

/// K(z, w) as its list of components (one complex number for cauchy, one real
/// for im_cauchy, d reals for riesz). Throws CoincidentPoints,
/// DimensionMismatch.
std::vector<Complex> kernel_eval(const KernelId& k, std::span<const double> z, std::span<const double> w);

/// Dense matrix of a kernel restricted to a set of atom pairs, acting on
/// L^2(mu) through (Tf)_i = sum_j K_ij f_j w_j.
struct OperatorMatrix {
  KernelId kernel = KernelId::cauchy();
  double epsilon = 0.0;
  std::vector<Eigen::MatrixXcd> components;  ///< one N x N block per kernel component
  Eigen::VectorXd weights;

  std::size_t size() const noexcept { return static_cast<std::size_t>(weights.size()); }
  bool is_zero() const;
  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator-=(const OperatorMatrix& other);
};

/// Truncated operator C_{ε,mu}: entries K(x_i, x_j) where |x_i - x_j| > ε and
/// i != j, zero elsewhere. ε = 0 is the discrete principal value (only the
/// diagonal removed). Throws EmptyMeasure, DimensionMismatch.
OperatorMatrix build_truncated(const DiscreteMeasure& mu, const KernelId& k, double eps);

/// Interactions with eps1 < |x_i - x_j| <= eps2 only, i.e. the difference
/// C_{eps1} - C_{eps2}.
OperatorMatrix build_band(const DiscreteMeasure& mu, const KernelId& k, double eps1, double eps2);

/// mu-weighted action, one output vector per kernel component. Throws
/// LengthMismatch.
std::vector<Eigen::VectorXcd> apply(const OperatorMatrix& t, const Eigen::VectorXcd& f);

/// ||f||_{L^2(mu)} for a stack of component vectors.
double l2_norm(const std::vector<Eigen::VectorXcd>& f, const Eigen::VectorXd& weights);

struct NormResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = true;
};

/// L^2(mu) -> L^2(mu) norm: largest singular value of B = W^(1/2) K W^(1/2)
/// (components stacked as a block column), by power iteration on B*B from a
/// fixed seed. Stops when successive Rayleigh quotients agree to `tol`
/// relatively; otherwise returns the last estimate with converged = false.
NormResult operator_norm(const OperatorMatrix& t, double tol = 1e-12, int max_iter = 10000);

/// ||C_{eps1} - C_{eps2}||, the Cauchy-sequence witness for norm convergence
/// of the truncations. Throws InvalidArgument unless 0 <= eps1 <= eps2.
NormResult truncation_gap(const DiscreteMeasure& mu, const KernelId& k, double eps1, double eps2,
                          double tol = 1e-12, int max_iter = 10000);

/// Square centered at the bounding-box center whose side is the smallest
/// power of two strictly larger than twice the sup-norm diameter, so that the
/// square of that side centered at any atom contains the whole support.
Cube shell_base(const DiscreteMeasure& mu);

/// T_j: row i keeps the pairs with x_k in Q_j(x_i) \ Q_{j+1}(x_i), where
/// Q_j(z) is the half-open square centered at z of side 2^-j l(base).
/// Masks move with the row, so the pattern is not symmetric. Cauchy kernel.
OperatorMatrix shell_operator(const DiscreteMeasure& mu, const Cube& base, int j);

/// C^N = T_0 + ... + T_{N-1}.
OperatorMatrix partial_sum_operator(const DiscreteMeasure& mu, const Cube& base, int levels);

/// ||K chi_Q||_{L^2(mu|Q)} with the ε = 0 operator of mu|Q. Throws EmptyCube.
double indicator_image_norm(const DiscreteMeasure& mu, const Cube& q, const KernelId& k);

/// |<C phi_Q', phi_Q''>| with phi_Q = chi_Q / mu(Q)^(1/2), full Cauchy kernel.
/// Throws EmptyCube, OverlappingCubes.
double pair_correlation(const DiscreteMeasure& mu, const Cube& qp, const Cube& qpp);

struct T1Quantities {
  double density_sup = 0.0;    ///< I_N
  double image_sup = 0.0;      ///< II_N
  double max_side = 0.0;       ///< 2^-N l(base)
  std::size_t cubes = 0;       ///< lattice cubes that passed the min_atoms guard
};

/// I_N and II_N: sups over dyadic lattice cubes of side <= 2^-N l(base) that
/// meet some Q_N(z), z an atom, and hold at least `min_atoms` atoms.
T1Quantities t1_quantities(const DiscreteMeasure& mu, const Cube& base, int levels,
                           std::size_t min_atoms = 2);

}  // namespace cauchylab
