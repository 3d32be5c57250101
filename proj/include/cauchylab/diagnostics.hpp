#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cauchylab/curvature.hpp"
#include "cauchylab/density.hpp"
#include "cauchylab/measure.hpp"
#include "cauchylab/operator.hpp"

namespace cauchylab {

enum class Verdict { compact_consistent, not_compact, inconclusive };
enum class ConditionStatus { decayed, persistent, unavailable };

const char* to_string(Verdict v) noexcept;
const char* to_string(ConditionStatus s) noexcept;

/// Thresholds and numerical settings for compactness_verdict.
struct VerdictConfig {
  /// A condition has decayed when finest <= decay_ratio * coarsest.
  double decay_ratio = 0.2;
  double norm_tol = 1e-10;
  int max_iter = 20000;
  std::uint64_t triple_budget = default_triple_budget;
};

/// Trend of one condition between the coarsest and finest probed scale.
struct ConditionSummary {
  std::string name;
  double coarsest = 0.0;
  double finest = 0.0;
  double threshold = 0.0;  ///< decay_ratio * coarsest
  ConditionStatus status = ConditionStatus::unavailable;
  std::string note;
};

struct GapEntry {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double gap = 0.0;
  bool converged = true;
};

struct ThetaEntry {
  int k = 0;
  double theta = 0.0;
  double partial_sum = 0.0;  ///< sum_{j <= k} theta_j^2
};

struct DiagnosticsReport {
  DensityProfile density_profile;
  std::vector<CurvatureRatioEntry> curvature_ratios;
  std::vector<GapEntry> truncation_gaps;
  std::optional<std::vector<ThetaEntry>> theta_series;
  ConditionSummary density;    ///< (b1)
  ConditionSummary curvature;  ///< (b2)
  ConditionSummary gaps;       ///< (c)
  Verdict verdict = Verdict::inconclusive;
  VerdictConfig config;
  std::vector<double> scales;
  std::vector<double> eps_ladder;
};

/// Evaluates the density condition (n = 1 profile), the curvature-ratio
/// condition and norm convergence of the truncations (gaps between
/// consecutive ladder radii) and combines them: any persistent condition
/// gives not_compact, all decayed gives compact_consistent, anything else is
/// inconclusive.
DiagnosticsReport compactness_verdict(const DiscreteMeasure& mu, std::span<const double> scales,
                                      std::span<const double> eps_ladder, const VerdictConfig& config = {});

struct TvResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_residual = 0.0;
  bool density_term_omitted = false;  ///< no density supplied, term taken as 0
};

using PointwiseDensity = std::function<double(std::span<const double>)>;

/// Compares ||C chi_Q||^2_{L^2(mu|Q)} with
/// (pi^2/3) sum_{x_i in Q} theta(x_i)^2 w_i + (1/6) c^2(mu|Q).
/// `density` is the linear density of the continuous measure mu approximates.
TvResidual tv_identity_residual(const DiscreteMeasure& mu, const Cube& q, const PointwiseDensity& density = {});

enum class ThetaConvention { density, paper };

const char* to_string(ThetaConvention c) noexcept;

/// theta_k for k = 0..depth: 4^-k / sigma_k (density of a generation-k square)
/// or 2^-k / sigma_k (the formula as printed), with running sums of squares.
std::vector<ThetaEntry> cantor_theta_series(const CantorSpec& spec, ThetaConvention convention);

struct CantorCurvatureCheck {
  double c2_per_mass = 0.0;        ///< c^2(p_depth) / p_depth(C), the mean of c^2_p(x)
  double theta_partial_sum = 0.0;  ///< sum_{k <= depth} theta_k^2
  double ratio = 0.0;              ///< c2_per_mass / theta_partial_sum
};

/// Throws BudgetExceeded when the triple sum at this depth exceeds `budget`.
CantorCurvatureCheck cantor_curvature_check(const CantorSpec& spec, int depth, ThetaConvention convention,
                                            std::uint64_t budget = default_triple_budget);

/// JSON with every number as a 17-significant-digit decimal string and a
/// fixed key order.
std::string report_to_json(const DiagnosticsReport& report);
/// Flat `section,key,value` rows.
std::string report_to_csv(const DiagnosticsReport& report);

}  // namespace cauchylab
