#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "cauchylab/measure_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const fs::path& workdir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("cauchylab_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args) {
  const auto out = workdir() / "stdout.txt", err = workdir() / "stderr.txt";
  const std::string cmd = "cd '" + workdir().string() + "' && '" CAUCHYLAB_CLI "' " + args + " > '" + out.string() +
                          "' 2> '" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

}  // namespace

TEST_CASE("gen writes a Cantor measure") {
  const auto r = run("gen cantor --lambda 0.25 --depth 3 -o c.json");
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const auto mu = cauchylab::load_measure(workdir() / "c.json");
  CHECK(mu.size() == 64);
  CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-14));

  REQUIRE(run("gen segment --a 0 --b 2 --n 4 -o s.csv").code == 0);
  const auto seg = cauchylab::load_measure(workdir() / "s.csv");
  CHECK(seg.size() == 4);
  CHECK(seg.coord(0, 0) == 0.25);
  CHECK(run("gen circle --n 12").out.find("\"points\"") != std::string::npos);
  CHECK(run("gen cantor --lambda 0.7 --depth 2 -o bad.json").code == 1);
  CHECK(run("gen spiral").code == 1);
}

TEST_CASE("verdict on a generated file") {
  REQUIRE(run("gen cantor --lambda 0.25 --depth 3 -o c.json").code == 0);
  const auto r = run("verdict -i c.json --scales 0.25,0.0625,0.015625");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("verdict"));
  CHECK(j["theta_series"].is_null());
  CHECK(j["density_profile"]["entries"].size() == 3);

  const auto g = run("verdict --generate cantor:0.25:3 --scales 0.25,0.0625,0.015625");
  CHECK(g.code == 0);
  CHECK(nlohmann::json::parse(g.out)["theta_series"].size() == 4);

  const auto csv = run("verdict -i c.json --scales 0.25,0.0625 --format csv");
  CHECK(csv.out.rfind("section,key,value", 0) == 0);
}

TEST_CASE("missing input is a validation error naming the path") {
  const auto r = run("norm -i missing.json");
  CHECK(r.code == 1);
  CHECK(r.err.find("missing.json") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 1);
  CHECK(run("norm").code == 1);
  CHECK(run("norm -i c.json --generate circle:1:10").code == 1);
  CHECK(run("density --generate circle:1:10 --scales 0.1,0.5").code == 1);
  CHECK(run("norm --generate circle:1:10 --kernel nope").code == 1);
  CHECK(run("norm --generate wedge:1").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("budget and convergence failures exit with 2") {
  const auto c = run("curvature --generate circle:1:300 --budget 1000");
  CHECK(c.code == 2);
  CHECK(c.err.find("BudgetExceeded") != std::string::npos);

  const auto n = run("norm --generate disc:1:12 --max-iter 1");
  CHECK(n.code == 2);
  CHECK(nlohmann::json::parse(n.out)["converged"] == "false");

  const auto v = run("verdict --generate segment:0:1:200 --scales 0.5,0.25 --budget 10");
  CHECK(v.code == 2);
  CHECK(nlohmann::json::parse(v.out)["verdict"] == "not_compact");

  const auto s = run("cantor-scan --lambda 0.25 --depth 5 --budget 1000000");
  CHECK(s.code == 2);
  CHECK(nlohmann::json::parse(s.out)["depths"].size() == 4);
}

TEST_CASE("commands produce the expected numbers") {
  const auto c = run("curvature --generate circle:1:3");
  REQUIRE(c.code == 0);
  const auto cj = nlohmann::json::parse(c.out);
  const double w = 2 * 3.141592653589793 / 3;
  CHECK(std::stod(cj["total"].get<std::string>()) == doctest::Approx(6 * w * w * w).epsilon(1e-12));
  CHECK(cj["triple_count"] == "6");

  const auto d = run("density --generate segment:0:1:1024 --scales 0.5,0.25,0.125");
  REQUIRE(d.code == 0);
  for (const auto& e : nlohmann::json::parse(d.out)["entries"]) {
    CHECK(std::stod(e["sup_density"].get<std::string>()) >= 1.0 - 1e-12);
  }

  {
    std::ofstream f(workdir() / "two.csv");
    f << "x1,x2,weight\n0,0,0.5\n1,0,0.5\n";
  }
  const auto n = run("norm -i two.csv");
  REQUIRE(n.code == 0);
  CHECK(std::stod(nlohmann::json::parse(n.out)["norm"].get<std::string>()) == doctest::Approx(0.5).epsilon(1e-12));

  const auto g = run("gaps --generate disc:1:16 --eps-ladder 0.5,0.25,0.125");
  REQUIRE(g.code == 0);
  CHECK(nlohmann::json::parse(g.out)["gaps"].size() == 2);

  const auto t = run("tv-check --generate circle:1:200 --density 1");
  REQUIRE(t.code == 0);
  const auto tj = nlohmann::json::parse(t.out);
  CHECK(std::stod(tj["relative_residual"].get<std::string>()) < 0.05);

  const auto s = run("cantor-scan --lambda 0.5 --depth 3");
  REQUIRE(s.code == 0);
  CHECK(nlohmann::json::parse(s.out)["theta_series"][3]["theta"] == "0.125");
}

TEST_CASE("output is deterministic and independent of the thread count") {
  const std::string base = "verdict --generate cantor:0.5:4 --scales 0.5,0.25,0.125 --eps-ladder 0.5,0.25,0.125";
  REQUIRE(run(base + " --threads 1 -o a.json").code == 0);
  const auto r = run(base + " --threads 3 -o b.json");
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(r.err.empty());
  const auto a = slurp(workdir() / "a.json"), b = slurp(workdir() / "b.json");
  CHECK_FALSE(a.empty());
  CHECK(a == b);
  fs::remove_all(workdir());
}
