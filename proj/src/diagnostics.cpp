#include "cauchylab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "cauchylab/error.hpp"
#include "cauchylab/measure_io.hpp"

namespace cauchylab {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::compact_consistent: return "compact_consistent";
    case Verdict::not_compact: return "not_compact";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const char* to_string(ConditionStatus s) noexcept {
  switch (s) {
    case ConditionStatus::decayed: return "decayed";
    case ConditionStatus::persistent: return "persistent";
    case ConditionStatus::unavailable: return "unavailable";
  }
  return "unavailable";
}

const char* to_string(ThetaConvention c) noexcept {
  return c == ThetaConvention::paper ? "paper" : "density";
}

namespace {

ConditionSummary summarize(std::string name, const std::vector<double>& values, double decay_ratio) {
  ConditionSummary s;
  s.name = std::move(name);
  if (values.empty()) {
    s.note = "no scales probed";
    return s;
  }
  s.coarsest = values.front();
  s.finest = values.back();
  s.threshold = decay_ratio * s.coarsest;
  if (values.size() < 2) {
    s.note = "a trend needs at least two scales";
    return s;
  }
  s.status = s.finest <= s.threshold ? ConditionStatus::decayed : ConditionStatus::persistent;
  if (s.coarsest == 0.0) s.note = "identically zero at the coarsest scale";
  return s;
}

}  // namespace

DiagnosticsReport compactness_verdict(const DiscreteMeasure& mu, std::span<const double> scales,
                                      std::span<const double> eps_ladder, const VerdictConfig& config) {
  if (!(config.decay_ratio > 0.0) || !(config.norm_tol > 0.0) || config.max_iter < 1) {
    throw Error(Errc::invalid_argument, "verdict thresholds must be positive");
  }
  validate_scales(scales);
  validate_scales(eps_ladder);
  if (mu.empty()) throw Error(Errc::empty_measure, "verdict on an empty measure");

  DiagnosticsReport report;
  report.config = config;
  report.scales.assign(scales.begin(), scales.end());
  report.eps_ladder.assign(eps_ladder.begin(), eps_ladder.end());

  report.density_profile = density_profile(mu, scales, 1);
  std::vector<double> dens;
  for (const auto& e : report.density_profile.entries) dens.push_back(e.sup_density);
  report.density = summarize("density", dens, config.decay_ratio);

  try {
    report.curvature_ratios = curvature_ratio_scan(mu, scales, config.triple_budget);
    std::vector<double> curv;
    for (const auto& e : report.curvature_ratios) curv.push_back(e.max_ratio);
    report.curvature = summarize("curvature", curv, config.decay_ratio);
  } catch (const Error& e) {
    if (e.code() != Errc::budget_exceeded) throw;
    report.curvature.name = "curvature";
    report.curvature.note = e.what();
  }

  std::vector<double> gaps;
  bool all_converged = true;
  for (std::size_t i = 0; i + 1 < eps_ladder.size(); ++i) {
    const double eps1 = eps_ladder[i + 1], eps2 = eps_ladder[i];
    const auto g = truncation_gap(mu, KernelId::cauchy(), eps1, eps2, config.norm_tol, config.max_iter);
    report.truncation_gaps.push_back({eps1, eps2, g.value, g.converged});
    gaps.push_back(g.value);
    all_converged = all_converged && g.converged;
  }
  report.gaps = summarize("truncation_gaps", gaps, config.decay_ratio);
  if (!all_converged) {
    report.gaps.status = ConditionStatus::unavailable;
    report.gaps.note = "power iteration did not converge";
  }

  const ConditionSummary* conditions[] = {&report.density, &report.curvature, &report.gaps};
  bool any_persistent = false, all_decayed = true;
  for (const auto* c : conditions) {
    any_persistent = any_persistent || c->status == ConditionStatus::persistent;
    all_decayed = all_decayed && c->status == ConditionStatus::decayed;
  }
  report.verdict = any_persistent ? Verdict::not_compact
                   : all_decayed  ? Verdict::compact_consistent
                                  : Verdict::inconclusive;
  return report;
}

TvResidual tv_identity_residual(const DiscreteMeasure& mu, const Cube& q, const PointwiseDensity& density) {
  const auto idx = atoms_in(mu, q);
  if (idx.empty()) throw Error(Errc::empty_cube, "cube holds no atoms");
  const auto sub = mu.subset(idx);

  TvResidual r;
  const double image = indicator_image_norm(sub, q, KernelId::cauchy());
  r.lhs = image * image;

  double density_term = 0.0;
  if (density) {
    for (std::size_t i = 0; i < sub.size(); ++i) {
      const double t = density(sub.point(i));
      density_term += t * t * sub.weight(i);
    }
  } else {
    r.density_term_omitted = true;
  }
  const double pi2 = std::numbers::pi * std::numbers::pi;
  r.rhs = pi2 / 3.0 * density_term + menger_c2(sub).total / 6.0;
  const double scale = std::max(r.lhs, r.rhs);
  r.relative_residual = scale > 0.0 ? std::abs(r.lhs - r.rhs) / scale : 0.0;
  return r;
}

std::vector<ThetaEntry> cantor_theta_series(const CantorSpec& spec, ThetaConvention convention) {
  spec.validate();
  std::vector<ThetaEntry> out;
  double sigma = 1.0, sum = 0.0;
  for (int k = 0; k <= spec.depth; ++k) {
    if (k > 0) sigma *= spec.lambdas[static_cast<std::size_t>(k - 1)];
    const double mass_scale = std::ldexp(1.0, convention == ThetaConvention::paper ? -k : -2 * k);
    const double t = mass_scale / sigma;
    sum += t * t;
    out.push_back({k, t, sum});
  }
  return out;
}

CantorCurvatureCheck cantor_curvature_check(const CantorSpec& spec, int depth, ThetaConvention convention,
                                            std::uint64_t budget) {
  spec.validate();
  if (depth < 0 || depth > spec.depth) throw Error(Errc::invalid_spec, "depth exceeds the construction depth");
  CantorSpec truncated{spec.lambdas, depth};
  const std::size_t atoms = std::size_t{1} << (2 * depth);
  if (triple_work(atoms) > budget) {
    throw Error(Errc::budget_exceeded, "Cantor depth " + std::to_string(depth) + " needs " +
                                           std::to_string(triple_work(atoms)) + " triple evaluations");
  }
  const auto p = generate_cantor(truncated);
  CantorCurvatureCheck out;
  out.c2_per_mass = menger_c2(p).total / p.total_mass();
  out.theta_partial_sum = cantor_theta_series(truncated, convention).back().partial_sum;
  out.ratio = out.c2_per_mass / out.theta_partial_sum;
  return out;
}

// ---------------------------------------------------------------- serialization

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json summary_json(const ConditionSummary& s) {
  ordered_json j;
  j["name"] = s.name;
  j["status"] = to_string(s.status);
  j["coarsest"] = format_double(s.coarsest);
  j["finest"] = format_double(s.finest);
  j["threshold"] = format_double(s.threshold);
  j["note"] = s.note;
  return j;
}

}  // namespace

std::string report_to_json(const DiagnosticsReport& r) {
  ordered_json j;
  j["verdict"] = to_string(r.verdict);
  ordered_json cfg;
  cfg["decay_ratio"] = format_double(r.config.decay_ratio);
  cfg["norm_tol"] = format_double(r.config.norm_tol);
  cfg["max_iter"] = std::to_string(r.config.max_iter);
  cfg["triple_budget"] = std::to_string(r.config.triple_budget);
  j["thresholds"] = cfg;
  j["conditions"] = ordered_json::array(
      {summary_json(r.density), summary_json(r.curvature), summary_json(r.gaps)});

  ordered_json profile;
  profile["exponent"] = std::to_string(r.density_profile.exponent);
  profile["entries"] = ordered_json::array();
  for (const auto& e : r.density_profile.entries) {
    profile["entries"].push_back({{"scale", format_double(e.scale)}, {"sup_density", format_double(e.sup_density)}});
  }
  j["density_profile"] = profile;

  j["curvature_ratios"] = ordered_json::array();
  for (const auto& e : r.curvature_ratios) {
    j["curvature_ratios"].push_back({{"scale", format_double(e.scale)},
                                     {"max_ratio", format_double(e.max_ratio)},
                                     {"cubes", std::to_string(e.cubes)}});
  }
  j["truncation_gaps"] = ordered_json::array();
  for (const auto& g : r.truncation_gaps) {
    j["truncation_gaps"].push_back({{"eps1", format_double(g.eps1)},
                                    {"eps2", format_double(g.eps2)},
                                    {"gap", format_double(g.gap)},
                                    {"converged", g.converged ? "true" : "false"}});
  }
  if (r.theta_series) {
    j["theta_series"] = ordered_json::array();
    for (const auto& t : *r.theta_series) {
      j["theta_series"].push_back({{"k", std::to_string(t.k)},
                                   {"theta", format_double(t.theta)},
                                   {"partial_sum", format_double(t.partial_sum)}});
    }
  } else {
    j["theta_series"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string report_to_csv(const DiagnosticsReport& r) {
  std::string out = "section,key,value\n";
  auto row = [&](const std::string& section, const std::string& key, const std::string& value) {
    out += section + "," + key + "," + value + "\n";
  };
  row("verdict", "verdict", to_string(r.verdict));
  for (const auto* c : {&r.density, &r.curvature, &r.gaps}) {
    row(c->name, "status", to_string(c->status));
    row(c->name, "coarsest", format_double(c->coarsest));
    row(c->name, "finest", format_double(c->finest));
    row(c->name, "threshold", format_double(c->threshold));
  }
  for (const auto& e : r.density_profile.entries) row("density_profile", format_double(e.scale), format_double(e.sup_density));
  for (const auto& e : r.curvature_ratios) row("curvature_ratio", format_double(e.scale), format_double(e.max_ratio));
  for (const auto& g : r.truncation_gaps) {
    row("truncation_gap", format_double(g.eps1) + ":" + format_double(g.eps2), format_double(g.gap));
  }
  if (r.theta_series) {
    for (const auto& t : *r.theta_series) row("theta_series", std::to_string(t.k), format_double(t.theta));
  }
  return out;
}

}  // namespace cauchylab
