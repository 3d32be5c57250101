// cauchylab: command-line front end for the measure generators and the
// compactness diagnostics.
//
// Exit codes: 0 success, 1 invalid input or usage, 2 budget or convergence
// failure (the report is still written).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cauchylab/curvature.hpp"
#include "cauchylab/density.hpp"
#include "cauchylab/diagnostics.hpp"
#include "cauchylab/error.hpp"
#include "cauchylab/measure.hpp"
#include "cauchylab/measure_io.hpp"
#include "cauchylab/operator.hpp"
#include "cauchylab/parallel.hpp"

using namespace cauchylab;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kBudget = 2;

// ---------------------------------------------------------------- parsing helpers

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::invalid_argument, "bad number '" + s + "' in " + what);
}

int to_int(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v != static_cast<int>(v)) throw Error(Errc::invalid_argument, "expected an integer in " + what);
  return static_cast<int>(v);
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(to_double(item, what));
  return out;
}

std::vector<double> parse_ladder(const std::string& text, const std::string& what) {
  auto values = parse_list(text, what);
  try {
    validate_scales(values);
  } catch (const Error& e) {
    throw Error(Errc::invalid_scales, what + ": " + e.what());
  }
  return values;
}

CantorSpec cantor_spec(const std::vector<double>& lambdas, int depth) {
  CantorSpec spec;
  spec.depth = depth;
  if (lambdas.size() == 1) {
    spec = CantorSpec::constant(lambdas[0], depth);
  } else {
    spec.lambdas = lambdas;
  }
  spec.validate();
  return spec;
}

// "cantor:λ[/λ2/...]:depth", "segment:a:b:N", "circle:r:N", "disc:r:M".
struct Source {
  DiscreteMeasure measure;
  std::optional<CantorSpec> cantor;
};

Source from_generator(const std::string& text) {
  const auto parts = split(text, ':');
  const std::string what = "--generate " + text;
  if (parts.empty()) throw Error(Errc::invalid_argument, "empty generator");
  const auto& kind = parts[0];
  if (kind == "cantor" && parts.size() == 3) {
    std::vector<double> lambdas;
    for (const auto& l : split(parts[1], '/')) lambdas.push_back(to_double(l, what));
    auto spec = cantor_spec(lambdas, to_int(parts[2], what));
    return {generate_cantor(spec), spec};
  }
  if (kind == "segment" && parts.size() == 4) {
    return {generate_segment(to_double(parts[1], what), to_double(parts[2], what), to_int(parts[3], what)), {}};
  }
  if (kind == "circle" && parts.size() == 3) {
    return {generate_circle(to_double(parts[1], what), to_int(parts[2], what)), {}};
  }
  if (kind == "disc" && parts.size() == 3) {
    return {generate_disc(to_double(parts[1], what), to_int(parts[2], what)), {}};
  }
  throw Error(Errc::invalid_argument,
              "unknown generator '" + text + "' (cantor:l:depth, segment:a:b:N, circle:r:N, disc:r:M)");
}

// ---------------------------------------------------------------- output

std::string num(double x) { return format_double(x); }

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(Errc::io_error, "cannot write " + path);
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- shared options

struct Common {
  std::string input;
  std::string generate;
  std::string output;
  unsigned threads = 0;
  double budget = static_cast<double>(default_triple_budget);

  Source load() const {
    if (!generate.empty()) return from_generator(generate);
    return {load_measure(input), {}};
  }
  std::uint64_t triple_budget() const {
    if (!(budget >= 0.0)) throw Error(Errc::invalid_argument, "--budget must be >= 0");
    return static_cast<std::uint64_t>(budget);
  }
};

void add_common(CLI::App* cmd, Common& c) {
  auto* in = cmd->add_option("-i,--input", c.input, "Measure file (.csv or .json)");
  auto* gen = cmd->add_option("--generate", c.generate,
                              "Generator instead of a file: cantor:l:depth, segment:a:b:N, circle:r:N, disc:r:M");
  in->excludes(gen);
  gen->excludes(in);
  cmd->add_option("-o,--output", c.output, "Output file (default: standard output)");
  cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
  cmd->add_option("--budget", c.budget, "Maximum triple evaluations for curvature sums");
  cmd->callback([&c, cmd] {
    if (c.input.empty() && c.generate.empty()) {
      throw CLI::ValidationError(cmd->get_name(), "one of --input or --generate is required");
    }
  });
}

// ---------------------------------------------------------------- commands

int run_gen(const std::string& kind, const std::vector<double>& lambdas, int depth, double a, double b, int n,
            double radius, const std::string& output) {
  DiscreteMeasure mu;
  if (kind == "cantor") {
    mu = generate_cantor(cantor_spec(lambdas, depth));
  } else if (kind == "segment") {
    mu = generate_segment(a, b, n);
  } else if (kind == "circle") {
    mu = generate_circle(radius, n);
  } else {
    mu = generate_disc(radius, n);
  }
  if (output.empty()) {
    emit(measure_to_json(mu), "");
  } else {
    save_measure(mu, output);
  }
  return kOk;
}

int run_curvature(const Common& c, const std::string& scales_text, bool pointwise) {
  const auto src = c.load();
  const auto& mu = src.measure;
  const auto budget = c.triple_budget();
  ordered_json j;
  j["atoms"] = std::to_string(mu.size());
  if (triple_work(mu.size()) > budget) {
    throw Error(Errc::budget_exceeded, std::to_string(mu.size()) + " atoms need " +
                                           std::to_string(triple_work(mu.size())) + " triple evaluations");
  }
  const auto r = menger_c2(mu, pointwise);
  j["total"] = num(r.total);
  j["triple_count"] = std::to_string(r.triple_count);
  if (r.pointwise) {
    j["pointwise"] = ordered_json::array();
    for (double v : *r.pointwise) j["pointwise"].push_back(num(v));
  }
  if (!scales_text.empty()) {
    j["ratios"] = ordered_json::array();
    for (const auto& e : curvature_ratio_scan(mu, parse_ladder(scales_text, "--scales"), budget)) {
      j["ratios"].push_back({{"scale", num(e.scale)}, {"max_ratio", num(e.max_ratio)}, {"cubes", std::to_string(e.cubes)}});
    }
  }
  emit(dump(j), c.output);
  return kOk;
}

int run_density(const Common& c, const std::string& scales_text, int exponent, bool no_shift) {
  const auto src = c.load();
  const auto scales = parse_ladder(scales_text, "--scales");
  const auto profile = density_profile(src.measure, scales, exponent, !no_shift);
  ordered_json j;
  j["exponent"] = std::to_string(profile.exponent);
  j["entries"] = ordered_json::array();
  for (const auto& e : profile.entries) j["entries"].push_back({{"scale", num(e.scale)}, {"sup_density", num(e.sup_density)}});
  if (exponent == 1 && src.measure.size() > 1) j["growth_constant"] = num(growth_constant(src.measure, scales));
  emit(dump(j), c.output);
  return kOk;
}

int run_norm(const Common& c, const std::string& kernel, double eps, double tol, int max_iter) {
  const auto src = c.load();
  const auto r = operator_norm(build_truncated(src.measure, KernelId::parse(kernel), eps), tol, max_iter);
  ordered_json j;
  j["kernel"] = kernel;
  j["epsilon"] = num(eps);
  j["norm"] = num(r.value);
  j["iterations"] = std::to_string(r.iterations);
  j["converged"] = r.converged ? "true" : "false";
  emit(dump(j), c.output);
  if (!r.converged) {
    std::cerr << "cauchylab: power iteration did not converge in " << max_iter << " iterations\n";
    return kBudget;
  }
  return kOk;
}

int run_gaps(const Common& c, const std::string& kernel, const std::string& ladder_text, double tol, int max_iter) {
  const auto src = c.load();
  const auto ladder = parse_ladder(ladder_text, "--eps-ladder");
  const auto k = KernelId::parse(kernel);
  ordered_json j;
  j["kernel"] = kernel;
  j["gaps"] = ordered_json::array();
  bool converged = true;
  for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
    const auto g = truncation_gap(src.measure, k, ladder[i + 1], ladder[i], tol, max_iter);
    converged = converged && g.converged;
    j["gaps"].push_back({{"eps1", num(ladder[i + 1])},
                         {"eps2", num(ladder[i])},
                         {"gap", num(g.value)},
                         {"converged", g.converged ? "true" : "false"}});
  }
  emit(dump(j), c.output);
  if (!converged) {
    std::cerr << "cauchylab: power iteration did not converge for at least one gap\n";
    return kBudget;
  }
  return kOk;
}

int run_tv_check(const Common& c, const std::string& cube_text, std::optional<double> density) {
  const auto src = c.load();
  const auto& mu = src.measure;
  if (triple_work(mu.size()) > c.triple_budget()) {
    throw Error(Errc::budget_exceeded, std::to_string(mu.size()) + " atoms exceed the triple budget");
  }
  Cube q = Cube::centered(Point{0, 0}, 1.0);
  if (cube_text.empty()) {
    const auto box = bounding_cube(mu);
    q = Cube::centered(box.center(), 2.0 * box.side());
  } else {
    const auto v = parse_list(cube_text, "--cube");
    if (v.size() < 2) throw Error(Errc::invalid_argument, "--cube expects center coordinates then side");
    q = Cube::centered(Point(std::vector<double>(v.begin(), v.end() - 1)), v.back());
  }
  PointwiseDensity theta_fn;
  if (density) theta_fn = [value = *density](std::span<const double>) { return value; };
  const auto r = tv_identity_residual(mu, q, theta_fn);
  ordered_json j;
  j["lhs"] = num(r.lhs);
  j["rhs"] = num(r.rhs);
  j["relative_residual"] = num(r.relative_residual);
  j["density_term_omitted"] = r.density_term_omitted ? "true" : "false";
  emit(dump(j), c.output);
  return kOk;
}

int run_verdict(const Common& c, const std::string& scales_text, const std::string& ladder_text,
                const VerdictConfig& base, const std::string& format, const std::string& convention) {
  const auto src = c.load();
  const auto scales = parse_ladder(scales_text, "--scales");
  const auto ladder = ladder_text.empty() ? scales : parse_ladder(ladder_text, "--eps-ladder");
  VerdictConfig config = base;
  config.triple_budget = c.triple_budget();
  auto report = compactness_verdict(src.measure, scales, ladder, config);
  if (src.cantor) {
    report.theta_series = cantor_theta_series(*src.cantor,
                                              convention == "paper" ? ThetaConvention::paper : ThetaConvention::density);
  }
  std::string fmt = format;
  if (fmt.empty()) fmt = c.output.size() > 4 && c.output.ends_with(".csv") ? "csv" : "json";
  emit(fmt == "csv" ? report_to_csv(report) : report_to_json(report), c.output);

  int code = kOk;
  for (const auto* cond : {&report.density, &report.curvature, &report.gaps}) {
    if (cond->status == ConditionStatus::unavailable && !cond->note.empty() &&
        (cond->note.find("BudgetExceeded") != std::string::npos || cond->note.find("converge") != std::string::npos)) {
      std::cerr << "cauchylab: " << cond->name << ": " << cond->note << "\n";
      code = kBudget;
    }
  }
  return code;
}

int run_cantor_scan(const std::vector<double>& lambdas, int depth, const std::string& convention,
                    std::uint64_t budget, const std::string& output) {
  const auto spec = cantor_spec(lambdas, depth);
  const auto conv = convention == "paper" ? ThetaConvention::paper : ThetaConvention::density;
  ordered_json j;
  j["convention"] = to_string(conv);
  j["theta_series"] = ordered_json::array();
  for (const auto& t : cantor_theta_series(spec, conv)) {
    j["theta_series"].push_back({{"k", std::to_string(t.k)}, {"theta", num(t.theta)}, {"partial_sum", num(t.partial_sum)}});
  }
  j["depths"] = ordered_json::array();
  int code = kOk;
  for (int d = 0; d <= depth; ++d) {
    try {
      const auto r = cantor_curvature_check(spec, d, conv, budget);
      j["depths"].push_back({{"depth", std::to_string(d)},
                             {"c2_per_mass", num(r.c2_per_mass)},
                             {"theta_partial_sum", num(r.theta_partial_sum)},
                             {"ratio", num(r.ratio)}});
    } catch (const Error& e) {
      if (e.code() != Errc::budget_exceeded) throw;
      std::cerr << "cauchylab: " << e.what() << "\n";
      code = kBudget;
      break;
    }
  }
  emit(dump(j), output);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete diagnostics for Cauchy-transform compactness"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Write a generated measure");
  std::string gen_kind, gen_output;
  std::vector<double> lambdas{0.25};
  int depth = 3, n = 100;
  double a = 0.0, b = 1.0, radius = 1.0;
  gen->add_option("kind", gen_kind, "cantor, segment, circle or disc")
      ->required()
      ->check(CLI::IsMember({"cantor", "segment", "circle", "disc"}));
  gen->add_option("--lambda", lambdas, "Cantor scaling factor(s), one value for a constant sequence")->delimiter(',');
  gen->add_option("--depth", depth, "Cantor depth");
  gen->add_option("--a", a, "Segment start");
  gen->add_option("--b", b, "Segment end");
  gen->add_option("--n", n, "Atom count (segment, circle) or grid size (disc)");
  gen->add_option("--radius", radius, "Circle or disc radius");
  gen->add_option("-o,--output", gen_output, "Output file, .csv or .json (default: JSON on standard output)");

  // curvature
  Common curv_c;
  std::string curv_scales;
  bool pointwise = false;
  auto* curv = app.add_subcommand("curvature", "Menger curvature c^2 and multiscale curvature ratios");
  add_common(curv, curv_c);
  curv->add_option("--scales", curv_scales, "Strictly decreasing cube sides for the ratio scan");
  curv->add_flag("--pointwise", pointwise, "Also report c^2 at every atom");

  // density
  Common dens_c;
  std::string dens_scales;
  int exponent = 1;
  bool no_shift = false;
  auto* dens = app.add_subcommand("density", "Multiscale density profile");
  add_common(dens, dens_c);
  dens->add_option("--scales", dens_scales, "Strictly decreasing cube sides")->required();
  dens->add_option("--exponent", exponent, "Density exponent n");
  dens->add_flag("--no-shift", no_shift, "Only the origin-anchored lattice");

  // norm
  Common norm_c;
  std::string norm_kernel = "cauchy";
  double eps = 0.0, tol = 1e-10;
  int max_iter = 20000;
  auto* norm = app.add_subcommand("norm", "Operator norm of a truncated singular integral");
  add_common(norm, norm_c);
  norm->add_option("--kernel", norm_kernel, "cauchy, im_cauchy or riesz:n:d");
  norm->add_option("--eps", eps, "Truncation radius");
  norm->add_option("--tol", tol, "Relative tolerance of the power iteration");
  norm->add_option("--max-iter", max_iter, "Iteration cap");

  // gaps
  Common gaps_c;
  std::string gaps_kernel = "cauchy", gaps_ladder;
  double gaps_tol = 1e-10;
  int gaps_iter = 20000;
  auto* gaps = app.add_subcommand("gaps", "Norm gaps between consecutive truncations");
  add_common(gaps, gaps_c);
  gaps->add_option("--kernel", gaps_kernel, "cauchy, im_cauchy or riesz:n:d");
  gaps->add_option("--eps-ladder", gaps_ladder, "Strictly decreasing truncation radii")->required();
  gaps->add_option("--tol", gaps_tol, "Relative tolerance of the power iteration");
  gaps->add_option("--max-iter", gaps_iter, "Iteration cap");

  // tv-check
  Common tv_c;
  std::string tv_cube;
  std::optional<double> tv_density;
  auto* tv = app.add_subcommand("tv-check", "Compare the indicator image norm with density and curvature");
  add_common(tv, tv_c);
  tv->add_option("--cube", tv_cube, "cx,cy,side (default: twice the bounding cube)");
  tv->add_option("--density", tv_density, "Constant linear density of the approximated measure");

  // verdict
  Common ver_c;
  std::string ver_scales, ver_ladder, ver_format, ver_conv = "density";
  VerdictConfig ver_config;
  auto* ver = app.add_subcommand("verdict", "Compactness verdict from density, curvature and truncation gaps");
  add_common(ver, ver_c);
  ver->add_option("--scales", ver_scales, "Strictly decreasing cube sides")->required();
  ver->add_option("--eps-ladder", ver_ladder, "Strictly decreasing truncation radii (default: the scales)");
  ver->add_option("--decay-ratio", ver_config.decay_ratio, "A condition has decayed when finest <= ratio * coarsest");
  ver->add_option("--tol", ver_config.norm_tol, "Relative tolerance of the power iteration");
  ver->add_option("--max-iter", ver_config.max_iter, "Iteration cap");
  ver->add_option("--format", ver_format, "json or csv (default from the output extension)")
      ->check(CLI::IsMember({"json", "csv"}));
  ver->add_option("--convention", ver_conv, "theta_k convention for Cantor sources")
      ->check(CLI::IsMember({"density", "paper"}));

  // cantor-scan
  std::vector<double> scan_lambdas{0.25};
  int scan_depth = 4;
  std::string scan_conv = "density", scan_output;
  unsigned scan_threads = 0;
  double scan_budget = static_cast<double>(default_triple_budget);
  auto* scan = app.add_subcommand("cantor-scan", "Curvature per unit mass against the theta_k partial sums");
  scan->add_option("--lambda", scan_lambdas, "Scaling factor(s)")->delimiter(',');
  scan->add_option("--depth", scan_depth, "Deepest construction");
  scan->add_option("--convention", scan_conv, "density or paper")->check(CLI::IsMember({"density", "paper"}));
  scan->add_option("-o,--output", scan_output, "Output file (default: standard output)");
  scan->add_option("--threads", scan_threads, "Worker threads (0 = all cores)");
  scan->add_option("--budget", scan_budget, "Maximum triple evaluations per depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*gen) return run_gen(gen_kind, lambdas, depth, a, b, n, radius, gen_output);
    if (*scan) {
      set_num_threads(scan_threads);
      if (!(scan_budget >= 0.0)) throw Error(Errc::invalid_argument, "--budget must be >= 0");
      return run_cantor_scan(scan_lambdas, scan_depth, scan_conv, static_cast<std::uint64_t>(scan_budget),
                             scan_output);
    }
    for (const auto* c : {&curv_c, &dens_c, &norm_c, &gaps_c, &tv_c, &ver_c}) {
      if (c->threads != 0) set_num_threads(c->threads);
    }
    if (*curv) return run_curvature(curv_c, curv_scales, pointwise);
    if (*dens) return run_density(dens_c, dens_scales, exponent, no_shift);
    if (*norm) return run_norm(norm_c, norm_kernel, eps, tol, max_iter);
    if (*gaps) return run_gaps(gaps_c, gaps_kernel, gaps_ladder, gaps_tol, gaps_iter);
    if (*tv) return run_tv_check(tv_c, tv_cube, tv_density);
    if (*ver) return run_verdict(ver_c, ver_scales, ver_ladder, ver_config, ver_format, ver_conv);
  } catch (const Error& e) {
    std::cerr << "cauchylab: " << e.what() << "\n";
    return e.code() == Errc::budget_exceeded ? kBudget : kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "cauchylab: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
