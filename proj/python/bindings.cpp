#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "dimlab/error.hpp"
#include "dimlab/estimators.hpp"
#include "dimlab/geometry.hpp"
#include "dimlab/transport.hpp"
#include "dimlab/tuning.hpp"

namespace py = pybind11;
using namespace dimlab;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw InputError("expected a 2-d array");
  Matrix m(a.shape(0), a.shape(1));
  if (!m.empty()) std::memcpy(m.data().data(), a.data(), m.data().size() * sizeof(double));
  return m;
}

Array to_array(const Matrix& m) {
  Array out({m.rows(), m.cols()});
  if (!m.empty()) std::memcpy(out.mutable_data(), m.data().data(), m.data().size() * sizeof(double));
  return out;
}

EstimatorConfig make_config(const std::string& method, int K, double alpha, std::uint64_t seed,
                            const std::string& metric, bool cov_with_center) {
  EstimatorConfig cfg;
  cfg.method = method_from_string(method);
  cfg.K = K;
  cfg.alpha = alpha;
  cfg.seed = seed;
  cfg.ground_metric = ground_metric_from_string(metric);
  if (cov_with_center) cfg.local_cov = LocalCovariance::with_center;
  return cfg;
}

py::dict report_dict(const EstimateReport& r) {
  py::dict d;
  d["d_hat"] = r.d_hat;
  d["method"] = std::string(to_string(r.method));
  if (r.locals) d["locals"] = py::array_t<double>(r.locals->size(), r.locals->data());
  else d["locals"] = py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_dimlab, m) {
  m.doc() = "Intrinsic dimension estimators and manifold samplers";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);

  m.def("methods", [] {
    std::vector<std::string> out;
    for (Method x : kAllMethods) out.emplace_back(to_string(x));
    return out;
  });

  m.def(
      "sample",
      [](const std::string& manifold, std::size_t n, std::uint64_t seed, std::uint64_t stream, double sigma,
         std::optional<std::pair<double, double>> beta) {
        SampleConfig cfg;
        cfg.n = n;
        cfg.seed = seed;
        cfg.stream_id = stream;
        cfg.noise_sigma = sigma;
        if (beta) cfg.beta = BetaShape{beta->first, beta->second};
        PointCloud c = [&] {
          py::gil_scoped_release release;
          return sample_manifold(catalog_entry(manifold), cfg);
        }();
        return to_array(c.points());
      },
      py::arg("manifold"), py::arg("n") = 1000, py::arg("seed") = 0, py::arg("stream") = 0, py::arg("sigma") = 0.0,
      py::arg("beta") = py::none(), "Sample n points from a catalog manifold (\"M11\", \"M6\", ...).");

  m.def(
      "sphere",
      [](int d, std::size_t p, std::size_t n, double radius, std::uint64_t seed) {
        SampleConfig cfg;
        cfg.n = n;
        cfg.seed = seed;
        return to_array(sample_manifold(make_sphere(d, p, radius), cfg).points());
      },
      py::arg("d"), py::arg("p"), py::arg("n") = 1000, py::arg("radius") = 1.0, py::arg("seed") = 0);

  m.def(
      "estimate",
      [](const Array& points, const std::string& method, int K, double alpha, std::uint64_t seed,
         const std::string& metric, bool cov_with_center) {
        const PointCloud cloud(to_matrix(points));
        const auto cfg = make_config(method, K, alpha, seed, metric, cov_with_center);
        EstimateReport r;
        {
          py::gil_scoped_release release;
          r = estimate(cloud, cfg);
        }
        return report_dict(r);
      },
      py::arg("points"), py::arg("method") = "mle", py::arg("K") = 20, py::arg("alpha") = 2.0, py::arg("seed") = 0,
      py::arg("metric") = "l2", py::arg("cov_with_center") = false);

  m.def(
      "tuned_estimate",
      [](const Array& points, const std::string& method, std::vector<double> grid, std::uint64_t seed,
         const std::string& metric) {
        const PointCloud cloud(to_matrix(points));
        const auto cfg = make_config(method, 20, 2.0, seed, metric, false);
        TunedReport t;
        {
          py::gil_scoped_release release;
          t = tuned_estimate(cloud, cfg, std::move(grid));
        }
        py::dict d = report_dict(t.report);
        d["grid"] = t.grid;
        d["estimates"] = t.estimates;
        d["window"] = py::make_tuple(t.window.k1, t.window.k2);
        return d;
      },
      py::arg("points"), py::arg("method") = "mle", py::arg("grid") = std::vector<double>{}, py::arg("seed") = 0,
      py::arg("metric") = "l2");

  m.def(
      "stable_window",
      [](const std::vector<double>& estimates) {
        const Window w = stable_window(estimates);
        return py::make_tuple(w.k1, w.k2);
      },
      py::arg("estimates"), "1-based inclusive (k1, k2).");

  m.def(
      "w1",
      [](const Array& a, const Array& b, const std::string& metric) {
        return w1_empirical(to_matrix(a), to_matrix(b), ground_metric_from_string(metric));
      },
      py::arg("a"), py::arg("b"), py::arg("metric") = "l1");

#ifdef DIMLAB_VERSION
  m.attr("__version__") = DIMLAB_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
