#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "sjk/cli.hpp"
#include "sjk/error.hpp"
#include "sjk/fuzz.hpp"
#include "sjk/groups.hpp"
#include "sjk/kernels.hpp"
#include "sjk/laplacian.hpp"
#include "sjk/metric.hpp"

namespace py = pybind11;
using namespace sjk;

namespace {

MetricParams params(const CMat& W, double k, double mu) { return {static_cast<int>(W.rows()), k, mu}; }

JacobiBallPoint point(const CVec& z, const CMat& W) {
  if (z.size() != W.rows()) throw Error(ErrorKind::DimensionMismatch, "z and W sizes differ");
  validate_ball_point(W);
  return {z, W};
}

py::tuple pair(const JacobiBallPoint& p) { return py::make_tuple(p.z, p.W); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Siegel-Jacobi ball geometry engine";

  py::exception<Error>(m, "SjkError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object cls = py::module_::import("sjk._core").attr("SjkError");
      PyErr_SetObject(cls.ptr(), py::make_tuple(std::string(to_string(e.kind())), e.detail()).ptr());
    }
  });

  m.def("kahler_potential", [](const CVec& z, const CMat& W, double k, double mu) {
    return kahler_potential(params(W, k, mu), point(z, W));
  }, py::arg("z"), py::arg("W"), py::arg("k"), py::arg("mu"));

  m.def("metric", [](const CVec& z, const CMat& W, double k, double mu) {
    const MetricEval e = metric_blocks(params(W, k, mu), point(z, W));
    py::dict d;
    d["h1"] = e.h1;
    d["h2"] = e.h2;
    d["h3"] = e.h3;
    d["h4"] = e.h4;
    d["h"] = e.h;
    return d;
  }, py::arg("z"), py::arg("W"), py::arg("k"), py::arg("mu"));

  m.def("metric_inverse", [](const CVec& z, const CMat& W, double k, double mu) {
    return metric_inverse(params(W, k, mu), point(z, W)).h_inv;
  }, py::arg("z"), py::arg("W"), py::arg("k"), py::arg("mu"));

  m.def("metric_det", [](const CVec& z, const CMat& W, double k, double mu) {
    const Determinant d = metric_det(params(W, k, mu), point(z, W));
    return py::dict(py::arg("value") = d.value, py::arg("closed_form") = d.closed_form,
                    py::arg("constant_C") = d.constant_C);
  }, py::arg("z"), py::arg("W"), py::arg("k"), py::arg("mu"));

  m.def("curvature", [](const CVec& z, const CMat& W, double k, double mu) {
    const CurvatureData c = curvature(params(W, k, mu), point(z, W));
    return py::dict(py::arg("ric") = c.ric, py::arg("scalar_curvature") = c.scalar_curvature,
                    py::arg("qk_lu") = c.qk_lu);
  }, py::arg("z"), py::arg("W"), py::arg("k"), py::arg("mu"));

  m.def("kernel", [](const CVec& z1, const CMat& W1, const CVec& z2, const CMat& W2, double k, double mu) {
    const MetricParams p = params(W1, k, mu);
    const KernelEval e = two_point_kernel(p, point(z1, W1), point(z2, W2));
    const NormalizedKernels nk = normalized_kernels(p, point(z1, W1), point(z2, W2));
    return py::dict(py::arg("F") = e.F, py::arg("K") = e.K, py::arg("kappa") = nk.kappa,
                    py::arg("berezin") = nk.berezin, py::arg("diastasis") = nk.diastasis);
  }, py::arg("z1"), py::arg("W1"), py::arg("z2"), py::arg("W2"), py::arg("k"), py::arg("mu"));

  m.def("epsilon", [](const CVec& z, const CMat& W, double k, double mu) {
    return epsilon_function(params(W, k, mu), point(z, W));
  }, py::arg("z"), py::arg("W"), py::arg("k"), py::arg("mu"));

  m.def("normalization_constant", [](int n, double k, double mu) { return normalization_constant({n, k, mu}); },
        py::arg("n"), py::arg("k"), py::arg("mu"));

  m.def("parseval_n1", [](double k, double mu) { return parseval_check_n1(k, mu).value; }, py::arg("k"),
        py::arg("mu"));

  m.def("laplacian", [](const std::string& field, const CVec& z, const CMat& W, double k, double mu) {
    const MetricParams p = params(W, k, mu);
    const FdConfig cfg{field == "lnG" ? 1e-3 : 1e-4, FdScheme::richardson};
    return apply_laplacian_jacobi(p, builtin_field(field, p), point(z, W), cfg);
  }, py::arg("field"), py::arg("z"), py::arg("W"), py::arg("k"), py::arg("mu"));

  m.def("partial_cayley", [](const CVec& u, const CMat& V) { return pair(partial_cayley({u, V})); },
        py::arg("u"), py::arg("V"));
  m.def("partial_cayley_inverse", [](const CVec& z, const CMat& W) {
    const JacobiUpperPoint up = partial_cayley_inverse(point(z, W));
    return py::make_tuple(up.u, up.V);
  }, py::arg("z"), py::arg("W"));

  m.def("sample_jacobi_ball", [](int n, std::uint64_t seed, double radius) {
    Rng rng(seed);
    return pair(sample_jacobi_ball(n, rng, radius));
  }, py::arg("n"), py::arg("seed"), py::arg("radius") = 0.9);

  m.def("verify_json", [](const std::string& category, int n, double k, double mu, int trials, std::uint64_t seed) {
    FuzzOptions o;
    o.category = category;
    o.n = n;
    o.k = k;
    o.mu = mu;
    o.trials = trials;
    o.seed = seed;
    std::string report;
    {
      py::gil_scoped_release nogil;
      const FuzzReport r = fuzz_all(o);
      report = nlohmann::json{{"pass", r.pass()}, {"properties", r.to_json()}}.dump();
    }
    return report;
  }, py::arg("category"), py::arg("n"), py::arg("k"), py::arg("mu"), py::arg("trials"), py::arg("seed"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<const char*> argv{"sjk"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
