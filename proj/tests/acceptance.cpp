// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cauchylab/analytic.hpp"
#include "cauchylab/curvature.hpp"
#include "cauchylab/density.hpp"
#include "cauchylab/diagnostics.hpp"
#include "cauchylab/measure.hpp"
#include "cauchylab/operator.hpp"
#include "oracles.hpp"

using namespace cauchylab;
namespace an = cauchylab::analytic;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> dyadic(int from, int to) {
  std::vector<double> s;
  for (int k = from; k <= to; ++k) s.push_back(std::ldexp(1.0, -k));
  return s;
}

std::vector<double> cantor_scales(const CantorSpec& spec) {
  std::vector<double> s;
  for (int k = 1; k <= spec.depth; ++k) s.push_back(spec.sigma(k));
  return s;
}

// ---------------------------------------------------------------------------

void hilbert_isometry(Outcome& out) {
  for (int k = 1; k <= 6; ++k) {
    const auto f = an::make_fk(k);
    const double norm =
        an::l2_norm_interval([&](double x) { return an::hilbert_step(f, x); }, -50, 50, 2000, f.breakpoints());
    out.note(fmt("k=%d |Hf|=%.6f", k, norm));
    out.check(rel(norm, pi) <= 0.01, fmt("k=%d off by %.3g", k, rel(norm, pi)));
  }
}

void segment_concentration(Outcome& out) {
  const int k = 8;
  const auto f = an::make_fk(k);
  auto hf = [&](double x) { return an::hilbert_step(f, x); };
  const double inside = an::l2_norm_interval(hf, 0, 1, 256, f.breakpoints());
  const double tail = std::pow(an::l2_norm_interval(hf, 1, 1000, 4000), 2);
  const double bound = std::ldexp(1.0, -k + 3);
  out.note(fmt("|Hf_8|_[0,1]=%.6f tail=%.3e bound=%.3e", inside, tail, bound));
  out.check(rel(inside, pi) <= 0.03, "segment norm within 3% of pi");
  out.check(tail <= bound, "tail bound");
}

void disc_truncation(Outcome& out) {
  const auto disc = generate_disc(1.0, 64);
  for (double eps : {0.125, 0.0625, 0.03125}) {
    const auto gap = truncation_gap(disc, KernelId::cauchy(), 0.0, eps, 1e-10, 20000);
    const double bound = std::sqrt(2 * pi * eps) * 1.15;
    out.note(fmt("eps=%g gap=%.5f bound=%.5f ratio=%.3f", eps, gap.value, bound, gap.value / std::sqrt(2 * pi * eps)));
    out.check(gap.converged, fmt("eps=%g power iteration converged", eps));
    out.check(gap.value <= bound, fmt("eps=%g gap within bound", eps));
  }
}

void tv_identity(Outcome& out) {
  const auto circle = generate_circle(1.0, 2000);
  const auto q = Cube::centered(Point{0, 0}, 3.0);
  const auto r = tv_identity_residual(circle, q, [](std::span<const double>) { return 1.0; });
  const double target = 2 * pi * pi * pi;
  out.note(fmt("lhs=%.5f rhs=%.5f target=%.5f residual=%.2e", r.lhs, r.rhs, target, r.relative_residual));
  out.check(rel(r.lhs, target) <= 0.02, "lhs within 2% of 2 pi^3");
  out.check(rel(r.rhs, target) <= 0.02, "rhs within 2% of 2 pi^3");
  out.check(r.relative_residual <= 0.02, "lhs and rhs within 2%");
}

void cantor_dichotomy(Outcome& out) {
  const auto ladder = dyadic(1, 5);
  {
    const auto spec = CantorSpec::constant(0.5, 5);
    const auto report = compactness_verdict(generate_cantor(spec), cantor_scales(spec), ladder);
    const auto& c = report.curvature_ratios;
    out.note(fmt("lambda=1/2 verdict=%s ratios g2=%.4g g5=%.4g", to_string(report.verdict), c[1].max_ratio,
                 c[4].max_ratio));
    out.check(report.verdict == Verdict::compact_consistent, "lambda=1/2 verdict compact_consistent");
    out.check(c[4].max_ratio * 4 <= c[1].max_ratio, "lambda=1/2 ratio decays 4x from generation 2 to 5");
  }
  {
    const auto spec = CantorSpec::constant(0.25, 5);
    const auto report = compactness_verdict(generate_cantor(spec), cantor_scales(spec), ladder);
    const auto& c = report.curvature_ratios;
    std::string ratios;
    for (const auto& e : c) ratios += fmt(" %.4g", e.max_ratio);
    out.note(fmt("lambda=1/4 verdict=%s (density %s, curvature %s) ratios g1..g5:%s", to_string(report.verdict),
                 to_string(report.density.status), to_string(report.curvature.status), ratios.c_str()));
    out.check(report.verdict == Verdict::not_compact, "lambda=1/4 verdict not_compact");
    bool monotone = true;
    for (std::size_t i = 1; i < c.size(); ++i) monotone = monotone && c[i].max_ratio >= 0.95 * c[i - 1].max_ratio;
    out.check(monotone, "lambda=1/4 curvature ratio non-decreasing within 5%");
  }
}

void segment_noncompact(Outcome& out) {
  const auto seg = generate_segment(0, 1, 4096);
  const auto report = compactness_verdict(seg, dyadic(2, 8), dyadic(2, 4));
  double lo = 1e300, hi = 0.0;
  for (const auto& e : report.density_profile.entries) {
    lo = std::min(lo, e.sup_density);
    hi = std::max(hi, e.sup_density);
  }
  out.note(fmt("density range [%.4f, %.4f] verdict=%s", lo, hi, to_string(report.verdict)));
  out.check(lo >= 0.8 && hi <= 2.0, "density profile within [0.8, 2.0]");
  out.check(report.verdict == Verdict::not_compact, "verdict not_compact");
  out.check(report.density.status == ConditionStatus::persistent, "triggered by the density condition");
}

DiscreteMeasure random_measure(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), w(0.05, 2.0);
  std::vector<double> coords, ws;
  for (std::size_t i = 0; i < n; ++i) {
    coords.push_back(u(rng));
    coords.push_back(u(rng));
    ws.push_back(w(rng));
  }
  return {2, coords, ws};
}

void oracle_equivalence(Outcome& out) {
  std::mt19937_64 rng(20240601);
  double worst_norm = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 49;
    const auto mu = random_measure(rng, n);
    const double eps = static_cast<double>(trial % 4) * 0.1;
    const auto r = operator_norm(build_truncated(mu, KernelId::cauchy(), eps), 1e-14, 200000);
    const double ref = oracle::max_singular_value(oracle::weighted_cauchy(mu, eps));
    worst_norm = std::max(worst_norm, ref > 0 ? rel(r.value, ref) : r.value);
  }
  out.check(worst_norm <= 1e-8, "operator_norm vs SVD within 1e-8");

  double worst_c2 = 0.0;
  for (std::size_t n : {3u, 10u, 50u, 150u, 300u}) {
    const auto mu = random_measure(rng, n);
    worst_c2 = std::max(worst_c2, rel(menger_c2(mu).total, oracle::menger_c2_reverse(mu)));
  }
  out.check(worst_c2 <= 1e-9, "menger_c2 vs reordered brute force within 1e-9");

  bool exact = true;
  for (int trial = 0; trial < 5; ++trial) {
    const auto mu = trial == 0 ? generate_cantor(CantorSpec::constant(0.5, 4)) : random_measure(rng, 40);
    const auto base = shell_base(mu);
    const int levels = static_cast<int>(std::ceil(std::log2(base.side() / min_pairwise_distance(mu)))) + 1;
    exact = exact && partial_sum_operator(mu, base, levels).components[0] ==
                         build_truncated(mu, KernelId::cauchy(), 0.0).components[0];
  }
  out.check(exact, "shell sums reconstruct the full matrix bit-exactly");
  out.note(fmt("worst norm rel err %.2e, worst c2 rel err %.2e", worst_norm, worst_c2));
}

void invariant_suites(Outcome& out) {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(-3.0, 3.0), s(0.05, 20.0), ang(0.0, 2 * pi);
  int failures = 0;

  for (int trial = 0; trial < 300; ++trial) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    const double r = circumradius(a, b, c);
    for (const auto& [p, q, t] : {std::tuple{a, c, b}, std::tuple{b, a, c}, std::tuple{b, c, a}, std::tuple{c, a, b},
                                  std::tuple{c, b, a}}) {
      failures += circumradius(p, q, t) == r ? 0 : 1;
    }
    const double t = s(rng), th = ang(rng), dx = u(rng), dy = u(rng);
    auto move = [&](const Point& p) {
      return Point{t * (std::cos(th) * p[0] - std::sin(th) * p[1]) + dx,
                   t * (std::sin(th) * p[0] + std::cos(th) * p[1]) + dy};
    };
    failures += rel(circumradius(move(a), move(b), move(c)), t * r) <= 1e-10 ? 0 : 1;
  }
  out.check(failures == 0, fmt("circumradius symmetry/similarity (%d failures)", failures));

  const auto mu = random_measure(rng, 80);
  {
    std::vector<double> ones(mu.size(), 1.0);
    const DiscreteMeasure plain(2, std::vector<double>(mu.coords().begin(), mu.coords().end()), ones);
    std::vector<double> scaled(plain.coords().begin(), plain.coords().end());
    for (auto& x : scaled) x *= 2.5;
    const double c = menger_c2(plain).total;
    out.check(rel(menger_c2(DiscreteMeasure(2, scaled, ones)).total, c / 6.25) <= 1e-10, "curvature scaling");
    out.check(rel(menger_c2(plain.scaled_weights(1.7)).total, c * 1.7 * 1.7 * 1.7) <= 1e-10, "curvature weight cube");
  }

  failures = 0;
  const auto t = build_truncated(mu, KernelId::cauchy(), 0.1);
  const auto n = static_cast<Eigen::Index>(mu.size());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) failures += t.components[0](i, j) == -t.components[0](j, i) ? 0 : 1;
  out.check(failures == 0, "kernel antisymmetry");

  const auto bc = bounding_cube(mu);
  const auto root = Cube::from_corner(Point{bc.lower(0), bc.lower(1)}, bc.side() * 1.0000001);
  std::vector<Cube> level{root};
  for (int d = 0; d < 4; ++d) {
    std::vector<Cube> next;
    for (const auto& c : level)
      for (auto& ch : c.dyadic_children()) next.push_back(ch);
    level = next;
    std::size_t atoms = 0;
    for (const auto& c : level) atoms += atoms_in(mu, c).size();
    out.check(atoms == mu.size(), fmt("mass additivity at depth %d", d + 1));
  }

  out.check(build_truncated(generate_segment(-2, 5, 300), KernelId::im_cauchy(), 0.0).is_zero(),
            "im_cauchy vanishes on a horizontal segment");

  const auto q = Cube::centered(Point{0.1, -0.2}, 0.9);
  out.check(theta(mu.scaled_weights(4.0), q, 1) == 4.0 * theta(mu, q, 1), "density homogeneity");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Hilbert isometry", 5, hilbert_isometry},
      {2, "segment norm concentration", 5, segment_concentration},
      {3, "disc truncation bound", 120, disc_truncation},
      {4, "Tolsa-Verdera identity on the circle", 600, tv_identity},
      {5, "Cantor dichotomy", 900, cantor_dichotomy},
      {6, "segment non-compactness", 60, segment_noncompact},
      {7, "oracle equivalence", 600, oracle_equivalence},
      {8, "invariant suites", 600, invariant_suites},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.check(secs <= c.limit_seconds, fmt("runtime %.1fs over %.0fs", secs, c.limit_seconds));
    failed += out.pass ? 0 : 1;
    std::printf("criterion %d %-40s %s  (%.2fs)\n", c.id, c.name, out.pass ? "PASS" : "FAIL", secs);
    for (const auto& n : out.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
