#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cauchylab/analytic.hpp"
#include "cauchylab/curvature.hpp"
#include "cauchylab/density.hpp"
#include "cauchylab/diagnostics.hpp"
#include "cauchylab/error.hpp"
#include "cauchylab/measure.hpp"
#include "cauchylab/measure_io.hpp"
#include "cauchylab/operator.hpp"
#include "cauchylab/parallel.hpp"

namespace py = pybind11;
using namespace cauchylab;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

DiscreteMeasure measure_from_arrays(const Array& points, const Array& weights) {
  if (points.ndim() != 2) throw Error(Errc::dimension_mismatch, "points must be an (N, d) array");
  if (weights.ndim() != 1) throw Error(Errc::length_mismatch, "weights must be a 1-d array");
  const auto n = static_cast<std::size_t>(points.shape(0));
  const auto d = static_cast<std::size_t>(points.shape(1));
  if (static_cast<std::size_t>(weights.shape(0)) != n) {
    throw Error(Errc::length_mismatch, "points and weights differ in length");
  }
  std::vector<double> coords(points.data(), points.data() + n * d);
  std::vector<double> w(weights.data(), weights.data() + n);
  return DiscreteMeasure(d, std::move(coords), std::move(w));
}

Array points_array(const DiscreteMeasure& mu) {
  Array out({static_cast<py::ssize_t>(mu.size()), static_cast<py::ssize_t>(mu.dim())});
  std::copy(mu.coords().begin(), mu.coords().end(), out.mutable_data());
  return out;
}

Array vector_array(std::span<const double> v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Cube cube_from(const std::vector<double>& center, double side, bool half_open) {
  return Cube::centered(Point(center), side, half_open);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Discrete Cauchy-transform diagnostics";

  static py::exception<Error> error(m, "CauchylabError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("set_num_threads", &set_num_threads, py::arg("n"));
  m.def("num_threads", &num_threads);

  py::class_<DiscreteMeasure>(m, "Measure")
      .def(py::init(&measure_from_arrays), py::arg("points"), py::arg("weights"))
      .def_property_readonly("size", &DiscreteMeasure::size)
      .def_property_readonly("dim", &DiscreteMeasure::dim)
      .def_property_readonly("total_mass", &DiscreteMeasure::total_mass)
      .def_property_readonly("points", &points_array)
      .def_property_readonly("weights", [](const DiscreteMeasure& mu) { return vector_array(mu.weights()); })
      .def("scaled_weights", &DiscreteMeasure::scaled_weights, py::arg("t"))
      .def("restrict", [](const DiscreteMeasure& mu, const std::vector<double>& center, double side,
                          bool half_open) { return restrict(mu, cube_from(center, side, half_open)); },
           py::arg("center"), py::arg("side"), py::arg("half_open") = true)
      .def("to_json", &measure_to_json)
      .def("to_csv", &measure_to_csv)
      .def("save", [](const DiscreteMeasure& mu, const std::string& path) { save_measure(mu, path); }, py::arg("path"))
      .def_static("load", [](const std::string& path) { return load_measure(path); }, py::arg("path"))
      .def("__len__", &DiscreteMeasure::size)
      .def("__repr__", [](const DiscreteMeasure& mu) {
        return "<Measure atoms=" + std::to_string(mu.size()) + " dim=" + std::to_string(mu.dim()) +
               " mass=" + format_double(mu.total_mass()) + ">";
      });

  m.def("generate_cantor", [](const std::vector<double>& lambdas, int depth) {
    CantorSpec spec{lambdas, depth};
    if (lambdas.size() == 1) spec = CantorSpec::constant(lambdas[0], depth);
    return generate_cantor(spec);
  }, py::arg("lambdas"), py::arg("depth"), "A single lambda is repeated for every generation.");
  m.def("generate_segment", &generate_segment, py::arg("a"), py::arg("b"), py::arg("n"));
  m.def("generate_circle", &generate_circle, py::arg("radius"), py::arg("n"));
  m.def("generate_disc", &generate_disc, py::arg("radius"), py::arg("m"));

  m.def("circumradius", [](const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c) {
    return circumradius(Point(a), Point(b), Point(c));
  }, py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("menger_c2", [](const DiscreteMeasure& mu, bool pointwise) {
    CurvatureResult r;
    {
      py::gil_scoped_release release;
      r = menger_c2(mu, pointwise);
    }
    py::dict out;
    out["total"] = r.total;
    out["triple_count"] = r.triple_count;
    out["pointwise"] = r.pointwise ? py::object(vector_array(*r.pointwise)) : py::none();
    return out;
  }, py::arg("mu"), py::arg("pointwise") = false);
  m.def("menger_c2_point", [](const DiscreteMeasure& mu, const std::vector<double>& z) {
    return menger_c2_point(mu, Point(z));
  }, py::arg("mu"), py::arg("z"));
  m.def("curvature_ratio_scan", [](const DiscreteMeasure& mu, const std::vector<double>& scales, double budget) {
    std::vector<std::tuple<double, double, std::size_t>> out;
    for (const auto& e : curvature_ratio_scan(mu, scales, static_cast<std::uint64_t>(budget))) {
      out.emplace_back(e.scale, e.max_ratio, e.cubes);
    }
    return out;
  }, py::arg("mu"), py::arg("scales"), py::arg("budget") = static_cast<double>(default_triple_budget),
        "List of (scale, max_ratio, cubes).");

  m.def("theta", [](const DiscreteMeasure& mu, const std::vector<double>& center, double side, int n) {
    return theta(mu, cube_from(center, side, true), n);
  }, py::arg("mu"), py::arg("center"), py::arg("side"), py::arg("n") = 1);
  m.def("density_profile", [](const DiscreteMeasure& mu, const std::vector<double>& scales, int n, bool shifted) {
    std::vector<std::pair<double, double>> out;
    for (const auto& e : density_profile(mu, scales, n, shifted).entries) out.emplace_back(e.scale, e.sup_density);
    return out;
  }, py::arg("mu"), py::arg("scales"), py::arg("n") = 1, py::arg("shifted") = true,
        "List of (scale, sup_density).");
  m.def("growth_constant", &growth_constant, py::arg("mu"), py::arg("scales"));

  m.def("kernel_eval", [](const std::string& kernel, const std::vector<double>& z, const std::vector<double>& w) {
    return kernel_eval(KernelId::parse(kernel), z, w);
  }, py::arg("kernel"), py::arg("z"), py::arg("w"));
  m.def("operator_norm", [](const DiscreteMeasure& mu, const std::string& kernel, double eps, double tol, int max_iter) {
    py::gil_scoped_release release;
    const auto r = operator_norm(build_truncated(mu, KernelId::parse(kernel), eps), tol, max_iter);
    return std::make_tuple(r.value, r.iterations, r.converged);
  }, py::arg("mu"), py::arg("kernel") = "cauchy", py::arg("eps") = 0.0, py::arg("tol") = 1e-12,
        py::arg("max_iter") = 10000, "(norm, iterations, converged) of the truncated operator.");
  m.def("truncation_gap", [](const DiscreteMeasure& mu, double eps1, double eps2, const std::string& kernel,
                             double tol, int max_iter) {
    py::gil_scoped_release release;
    const auto r = truncation_gap(mu, KernelId::parse(kernel), eps1, eps2, tol, max_iter);
    return std::make_tuple(r.value, r.iterations, r.converged);
  }, py::arg("mu"), py::arg("eps1"), py::arg("eps2"), py::arg("kernel") = "cauchy", py::arg("tol") = 1e-12,
        py::arg("max_iter") = 10000);

  m.def("compactness_verdict_json", [](const DiscreteMeasure& mu, const std::vector<double>& scales,
                                       const std::vector<double>& eps_ladder, double decay_ratio, double norm_tol,
                                       int max_iter, double budget) {
    VerdictConfig config;
    config.decay_ratio = decay_ratio;
    config.norm_tol = norm_tol;
    config.max_iter = max_iter;
    config.triple_budget = static_cast<std::uint64_t>(budget);
    py::gil_scoped_release release;
    return report_to_json(compactness_verdict(mu, scales, eps_ladder, config));
  }, py::arg("mu"), py::arg("scales"), py::arg("eps_ladder"), py::arg("decay_ratio") = 0.2,
        py::arg("norm_tol") = 1e-10, py::arg("max_iter") = 20000,
        py::arg("budget") = static_cast<double>(default_triple_budget));

  m.def("tv_identity_residual", [](const DiscreteMeasure& mu, const std::vector<double>& center, double side,
                                   std::optional<double> density) {
    PointwiseDensity fn;
    if (density) fn = [v = *density](std::span<const double>) { return v; };
    const auto r = tv_identity_residual(mu, cube_from(center, side, true), fn);
    py::dict out;
    out["lhs"] = r.lhs;
    out["rhs"] = r.rhs;
    out["relative_residual"] = r.relative_residual;
    out["density_term_omitted"] = r.density_term_omitted;
    return out;
  }, py::arg("mu"), py::arg("center"), py::arg("side"), py::arg("density") = py::none(),
        "density is a constant linear density of the approximated measure, or None to omit that term.");

  m.def("cantor_theta_series", [](const std::vector<double>& lambdas, int depth, const std::string& convention) {
    CantorSpec spec{lambdas, depth};
    if (lambdas.size() == 1) spec = CantorSpec::constant(lambdas[0], depth);
    if (convention != "density" && convention != "paper") {
      throw Error(Errc::invalid_argument, "convention is 'density' or 'paper'");
    }
    std::vector<std::tuple<int, double, double>> out;
    for (const auto& e : cantor_theta_series(spec, convention == "paper" ? ThetaConvention::paper
                                                                         : ThetaConvention::density)) {
      out.emplace_back(e.k, e.theta, e.partial_sum);
    }
    return out;
  }, py::arg("lambdas"), py::arg("depth"), py::arg("convention") = "density", "List of (k, theta_k, partial_sum).");

  m.def("hilbert_fk", [](int k, const std::vector<double>& xs) {
    const auto f = analytic::make_fk(k);
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(analytic::hilbert_step(f, x));
    return out;
  }, py::arg("k"), py::arg("x"), "Closed-form Hilbert transform of f_k at the given points.");
}
