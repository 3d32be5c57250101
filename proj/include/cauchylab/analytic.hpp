#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace cauchylab::analytic {

/// Piecewise constant function: values[i] on (breakpoints[i], breakpoints[i+1]),
/// zero outside [breakpoints.front(), breakpoints.back()].
class StepFunction {
 public:
  /// Throws InvalidArgument unless breakpoints strictly increase, values are
  /// finite and values.size() + 1 == breakpoints.size().
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Value at x (right-continuous at breakpoints).
  double operator()(double x) const;
  /// Exact integral of f.
  double integral() const;
  /// Exact ||f||^2_{L^2(R)}.
  double l2_norm_sq() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// f_k = 2^((k-1)/2) (chi_[1/2 - 2^-k, 1/2] - chi_[1/2, 1/2 + 2^-k]), k >= 1.
StepFunction make_fk(int k);

/// Principal value of int f(y)/(x - y) dy in closed form:
/// sum_i v_i ln|(x - a_i)/(x - b_i)|. Throws BreakpointSingularity when x is a
/// breakpoint.
double hilbert_step(const StepFunction& f, double x);

/// 8-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 8> gauss8_nodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> gauss8_weights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

/// Composite 8-point Gauss-Legendre approximation of int_a^b g.
/// Panels are `panels` equal pieces, additionally split at every supplied
/// breakpoint in [a, b]; panels ending at a breakpoint are graded geometrically
/// toward it, so integrable log singularities there are resolved without ever
/// evaluating g at a breakpoint.
double integrate(const std::function<double(double)>& g, double a, double b, int panels,
                 std::span<const double> breakpoints = {});

/// (int_a^b |f|^2)^(1/2) by `integrate`. Throws InvalidArgument unless a < b
/// and panels >= 1.
double l2_norm_interval(const std::function<double(double)>& f, double a, double b, int panels,
                        std::span<const double> breakpoints = {});

}  // namespace cauchylab::analytic
