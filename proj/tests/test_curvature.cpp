#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cauchylab/curvature.hpp"
#include "cauchylab/error.hpp"
#include "cauchylab/parallel.hpp"
#include "oracles.hpp"

using namespace cauchylab;

namespace {

DiscreteMeasure random_measure(std::mt19937_64& rng, std::size_t n, bool unit_weights = false) {
  std::uniform_real_distribution<double> u(-2.0, 2.0), w(0.2, 3.0);
  std::vector<Point> pts;
  std::vector<double> ws;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(Point{u(rng), u(rng)});
    ws.push_back(unit_weights ? 1.0 : w(rng));
  }
  return {pts, ws};
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_SUITE("curvature") {

TEST_CASE("circumradius examples") {
  CHECK(circumradius({0, 0}, {4, 0}, {0, 3}) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(std::isinf(circumradius({0, 0}, {1, 0}, {2, 0})));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
  for (int i = 0; i < 100; ++i) {
    const double a = ang(rng), b = ang(rng), c = ang(rng);
    const double r = circumradius({std::cos(a), std::sin(a)}, {std::cos(b), std::sin(b)}, {std::cos(c), std::sin(c)});
    CHECK(r == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(circumradius({0, 0}, {0, 0}, {1, 1}), Error);
  CHECK_THROWS_AS(circumradius({0, 0, 0}, {1, 0, 0}, {0, 1, 0}), Error);
}

TEST_CASE("circumradius symmetry and similarity") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0), s(0.01, 50.0), ang(0.0, 6.283);
  for (int trial = 0; trial < 200; ++trial) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    const double r = circumradius(a, b, c);
    CHECK(circumradius(a, c, b) == r);
    CHECK(circumradius(b, a, c) == r);
    CHECK(circumradius(b, c, a) == r);
    CHECK(circumradius(c, a, b) == r);
    CHECK(circumradius(c, b, a) == r);

    const double t = s(rng), th = ang(rng), dx = u(rng), dy = u(rng);
    auto move = [&](const Point& p) {
      return Point{t * (std::cos(th) * p[0] - std::sin(th) * p[1]) + dx,
                   t * (std::sin(th) * p[0] + std::cos(th) * p[1]) + dy};
    };
    CHECK(rel(circumradius(move(a), move(b), move(c)), t * r) <= 1e-10);
  }
}

TEST_CASE("pointwise curvature examples") {
  CHECK(menger_c2_point(new_measure({{1, 1}}, {1}), Point{0, 0}) == 0.0);
  CHECK(menger_c2_point(new_measure({{1, 0}, {2, 0}}, {1, 1}), Point{0, 0}) == 0.0);
  CHECK(menger_c2_point(new_measure({{4, 0}, {0, 3}}, {1, 1}), Point{0, 0}) ==
        doctest::Approx(0.32).epsilon(1e-14));
  // z coinciding with an atom excludes that atom.
  CHECK(menger_c2_point(new_measure({{0, 0}, {4, 0}, {0, 3}}, {1, 1, 1}), Point{0, 0}) ==
        doctest::Approx(0.32).epsilon(1e-14));
}

TEST_CASE("total curvature examples") {
  const auto tri = new_measure({{0, 0}, {4, 0}, {0, 3}}, {1, 1, 1});
  const auto r = menger_c2(tri);
  CHECK(r.total == doctest::Approx(0.96).epsilon(1e-14));
  CHECK(r.triple_count == 6);
  CHECK(menger_c2(generate_segment(0, 1, 50)).total == 0.0);
  CHECK(menger_c2(new_measure({{0, 0}, {1, 1}}, {1, 1})).total == 0.0);
}

TEST_CASE("circle curvature matches the discrete closed form") {
  // R = 1 for every triple, so the sum is w^3 N(N-1)(N-2) with w = 2 pi / N.
  for (int n : {3, 10, 200}) {
    const double w = 2 * std::numbers::pi / n;
    const double expected = w * w * w * n * (n - 1.0) * (n - 2.0);
    CHECK(rel(menger_c2(generate_circle(1.0, n)).total, expected) <= 1e-9);
  }
  const double limit = std::pow(2 * std::numbers::pi, 3);
  CHECK(rel(menger_c2(generate_circle(1.0, 400)).total, limit) <= 0.01);
}

TEST_CASE("pointwise sums reproduce the total") {
  std::mt19937_64 rng(21);
  for (std::size_t n : {3u, 17u, 80u}) {
    const auto mu = random_measure(rng, n);
    const auto r = menger_c2(mu, true);
    REQUIRE(r.pointwise);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += (*r.pointwise)[i] * mu.weight(i);
    CHECK(rel(sum, r.total) <= 1e-9);
    for (std::size_t i = 0; i < n; i += 7) {
      CHECK(rel(menger_c2_point(mu, Point(mu.point(i))), (*r.pointwise)[i]) <= 1e-12);
    }
  }
}

TEST_CASE("agreement with a reordered brute-force sum") {
  std::mt19937_64 rng(33);
  for (std::size_t n : {4u, 25u, 120u, 300u}) {
    const auto mu = random_measure(rng, n);
    CHECK(rel(menger_c2(mu).total, oracle::menger_c2_reverse(mu)) <= 1e-9);
  }
}

TEST_CASE("similarity, bilinearity and restriction monotonicity") {
  std::mt19937_64 rng(44);
  const auto mu = random_measure(rng, 60, true);
  const double base = menger_c2(mu).total;
  const double t = 3.7;
  std::vector<double> scaled(mu.coords().begin(), mu.coords().end());
  for (auto& x : scaled) x *= t;
  CHECK(rel(menger_c2(DiscreteMeasure(2, scaled, std::vector<double>(mu.weights().begin(), mu.weights().end()))).total,
            base / (t * t)) <= 1e-10);
  CHECK(rel(menger_c2(mu.scaled_weights(t)).total, base * t * t * t) <= 1e-10);

  const auto wmu = random_measure(rng, 60);
  const auto big = Cube::centered(Point{0, 0}, 3.0), small = Cube::centered(Point{0.2, 0.1}, 1.5);
  CHECK(menger_c2(restrict(wmu, small)).total <= menger_c2(restrict(wmu, big)).total);
  CHECK(menger_c2(restrict(wmu, big)).total <= menger_c2(wmu).total);
}

TEST_CASE("result does not depend on the thread count") {
  std::mt19937_64 rng(55);
  const auto mu = random_measure(rng, 150);
  set_num_threads(1);
  const auto one = menger_c2(mu, true);
  set_num_threads(7);
  const auto seven = menger_c2(mu, true);
  set_num_threads(0);
  CHECK(one.total == seven.total);
  CHECK(*one.pointwise == *seven.pointwise);
}

TEST_CASE("curvature ratio scan") {
  const double scales[] = {0.5, 0.25, 0.125};
  for (const auto& e : curvature_ratio_scan(generate_segment(0, 1, 64), scales)) CHECK(e.max_ratio == 0.0);

  // Atoms far apart: every occupied cube at these scales holds one atom.
  const auto sparse = new_measure({{0.1, 0.1}, {5.1, 0.3}, {0.2, 7.7}}, {1, 1, 1});
  for (const auto& e : curvature_ratio_scan(sparse, scales)) {
    CHECK(e.max_ratio == 0.0);
    CHECK(e.cubes == 3);
  }

  CHECK_THROWS_AS(curvature_ratio_scan(sparse, std::vector<double>{0.25, 0.5}), Error);
  CHECK_THROWS_AS(curvature_ratio_scan(sparse, std::vector<double>{0.5, -1.0}), Error);
  CHECK(curvature_ratio_scan(sparse, std::vector<double>{}).empty());
}

TEST_CASE("budget guard fires before any work") {
  const auto mu = generate_circle(1.0, 1000);
  const double scales[] = {4.0};
  try {
    curvature_ratio_scan(mu, scales, 1000);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::budget_exceeded);
  }
  CHECK(triple_work(1000) == 166'167'000ULL);
  CHECK(triple_work(2) == 0);
}

TEST_CASE("Cantor self-similarity of the curvature ratio") {
  // A generation-k square of the depth-n construction is a copy of the
  // depth-(n-k) construction scaled by sigma_k with mass 4^-k, so
  // c^2(p|Q)/p(Q) = 4^-2k sigma_k^-2 c^2(p_{n-k}) and for lambda = 1/4 the
  // prefactor is 1.
  const int n = 4;
  const auto spec = CantorSpec::constant(0.25, n);
  const auto p = generate_cantor(spec);
  std::vector<double> scales;
  for (int k = 1; k <= n; ++k) scales.push_back(spec.sigma(k));
  const auto scan = curvature_ratio_scan(p, scales);
  REQUIRE(scan.size() == static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const double sub = menger_c2(generate_cantor(CantorSpec::constant(0.25, n - k))).total;
    CHECK(rel(scan[k - 1].max_ratio + 1e-300, sub + 1e-300) <= 1e-9);
  }
}

}  // TEST_SUITE
