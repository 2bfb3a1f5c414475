#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fspair/kernels.hpp"
#include "fspair/measures.hpp"
#include "fspair/nevanlinna.hpp"
#include "fspair/qseries.hpp"
#include "fspair/testfn.hpp"

namespace py = pybind11;
using namespace fspair;
using cplx = std::complex<double>;

namespace {

std::vector<double> coeff_list(const qseries::TruncatedPowerSeries& s) {
  return {s.coeffs().begin(), s.coeffs().end()};
}

py::dict report_dict(const testfn::VerificationReport& r) {
  py::dict d;
  d["pair_name"] = r.pair_name;
  d["testfn"] = testfn::to_string(r.testfn.kind);
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["abs_residual"] = r.abs_residual();
  d["mu_truncation"] = r.mu_truncation;
  d["a_truncation"] = r.a_truncation;
  d["quadrature_tol"] = r.quadrature_tol;
  d["runtime_ms"] = r.runtime_ms;
  d["lhs_error"] = r.lhs_error;
  d["degraded"] = r.degraded;
  return d;
}

testfn::TestFunctionSpec make_spec(const std::string& kind, double scale, double shift) {
  testfn::TestFunctionSpec s;
  s.kind = testfn::kind_from_string(kind);
  s.scale = scale;
  s.shift = shift;
  return s;
}

}  // namespace

PYBIND11_MODULE(_fspair, m) {
  m.doc() = "Fourier summation pairs";
  m.attr("__version__") = "0.1.0";

  // q-series
  m.def("euler_coeffs", [](int n) { return coeff_list(qseries::euler_coeffs(n)); }, py::arg("n_max"));
  m.def("theta_coeffs", [](int n) { return coeff_list(qseries::theta_coeffs(n)); }, py::arg("n_max"));
  m.def("guinand_coeffs", [](double c, int n) { return coeff_list(qseries::guinand_coeffs(c, n)); },
        py::arg("c"), py::arg("n_max"));
  m.def("r3_sequence", [](int n) { return qseries::r3_sequence(n).values; }, py::arg("n_max"));

  // kernels
  m.def("r_poly", [](int k) { return kernels::r_poly(k).coeffs(); }, py::arg("k"));
  m.def("eval_A", &kernels::eval_A, py::arg("k"), py::arg("x"));
  m.def("eval_S", &kernels::eval_S, py::arg("k"), py::arg("x"));
  m.def("eval_Shat", &kernels::eval_Shat, py::arg("k"), py::arg("t"));
  m.def("eval_G", &kernels::eval_G, py::arg("k"), py::arg("w"), py::arg("z"), py::arg("lam"));
  m.def("eval_Ghat", &kernels::eval_Ghat, py::arg("k"), py::arg("w"), py::arg("z"), py::arg("t"));
  m.def("pf_identity_residual", &kernels::pf_identity_residual, py::arg("k"), py::arg("z"));

  // measures
  py::class_<measures::FSPair>(m, "FSPair")
      .def_property_readonly("name", &measures::FSPair::name)
      .def_property_readonly("antipodal", &measures::FSPair::antipodal)
      .def_property_readonly("strip_constant", &measures::FSPair::strip_constant)
      .def_property_readonly("degree_bound", [](const measures::FSPair& p) { return p.mu().degree_bound(); })
      .def_property_readonly("atoms", [](const measures::FSPair& p) {
        std::vector<std::pair<double, cplx>> out;
        for (const auto& a : p.mu().atoms()) out.emplace_back(a.location, a.weight);
        return out;
      })
      .def_property_readonly("support", [](const measures::FSPair& p) {
        std::vector<std::pair<double, cplx>> out;
        for (const auto& s : p.a().support()) out.emplace_back(s.lambda, s.value);
        return out;
      })
      .def("a", [](const measures::FSPair& p, double lam) { return p.a().at(lam); })
      .def("to_json", &measures::pair_to_json);
  m.def("make_poisson", &measures::make_poisson, py::arg("t_max") = 64.0, py::arg("lambda_max") = 64.0);
  m.def("make_guinand", &measures::make_guinand, py::arg("c"), py::arg("n_max") = 512);
  m.def("make_meyer", &measures::make_meyer, py::arg("n_max") = 2000);
  m.def("parse_pair", &measures::parse_pair, py::arg("json_text"));
  m.def("load_pair", [](const std::string& path) { return measures::load_pair(path); }, py::arg("path"));
  m.def("antipodal_split", &measures::antipodal_split, py::arg("pair"));
  m.def("degree_probe", [](const measures::FSPair& p, int n, std::vector<double> grid) {
    const auto r = measures::degree_probe(p.mu(), n, grid);
    py::dict d;
    d["n"] = r.n;
    d["t_grid"] = r.t_grid;
    d["partial_integrals"] = r.partial_integrals;
    d["verdict"] = measures::to_string(r.verdict);
    return d;
  }, py::arg("pair"), py::arg("n"), py::arg("t_grid"));

  // test functions
  m.def("eval_testfn", [](const std::string& kind, double scale, double shift, double x) {
    return testfn::eval_testfn(make_spec(kind, scale, shift), x);
  }, py::arg("kind"), py::arg("scale"), py::arg("shift"), py::arg("x"));
  m.def("ft_testfn", [](const std::string& kind, double scale, double shift, double xi, double tol) {
    return testfn::ft_testfn(make_spec(kind, scale, shift), xi, tol);
  }, py::arg("kind"), py::arg("scale"), py::arg("shift"), py::arg("xi"), py::arg("tol") = 1e-10);
  m.def("verify_pair", [](const measures::FSPair& p, const std::string& kind, double scale, double shift,
                          double tol) {
    return report_dict(testfn::verify_pair(p, make_spec(kind, scale, shift), tol));
  }, py::arg("pair"), py::arg("testfn") = "bump", py::arg("scale") = 1.0, py::arg("shift") = 0.0,
        py::arg("tol") = 1e-8);

  // holomorphic side
  py::class_<nevanlinna::HolomorphicModel>(m, "HolomorphicModel")
      .def_property_readonly("k", &nevanlinna::HolomorphicModel::k)
      .def_property_readonly("q_poly", &nevanlinna::HolomorphicModel::q_poly)
      .def_property_readonly("fit_residual", &nevanlinna::HolomorphicModel::fit_residual)
      .def("f_integral", [](const nevanlinna::HolomorphicModel& md, cplx z) {
        return nevanlinna::f_integral(md, z).value;
      });
  m.def("fit_model", &nevanlinna::fit_model, py::arg("pair"), py::arg("k") = -1);
  m.def("f_series", [](const measures::FSPair& p, cplx z) { return nevanlinna::f_series(p, z).value; },
        py::arg("pair"), py::arg("z"));
  m.def("ef_coeff", [](const measures::FSPair& p, double lam, double y, double t) {
    return nevanlinna::ef_coeff(p, lam, y, t).value;
  }, py::arg("pair"), py::arg("lam"), py::arg("y"), py::arg("T"));
  m.def("recover_measure", [](const nevanlinna::HolomorphicModel& md, double a, double b) {
    return nevanlinna::recover_measure_extrapolated(md, a, b).extrapolated;
  }, py::arg("model"), py::arg("a"), py::arg("b"));
  m.def("neg_index", [](const nevanlinna::HolomorphicModel& md, std::vector<cplx> pts, double tol) {
    return nevanlinna::neg_index(nevanlinna::nev_matrix(md, pts), tol);
  }, py::arg("model"), py::arg("points"), py::arg("tol_rel") = 1e-9);
  m.def("bridge_sum", &nevanlinna::bridge_sum, py::arg("pair"), py::arg("k"), py::arg("w"), py::arg("z"),
        py::arg("T"));
  m.def("bridge_rhs", [](const measures::FSPair& p, int k, cplx w, cplx z) {
    return nevanlinna::bridge_rhs(p, k, w, z).value;
  }, py::arg("pair"), py::arg("k"), py::arg("w"), py::arg("z"));
  m.def("ap_proxy", [](const measures::FSPair& p, double y, std::vector<std::size_t> truncs) {
    return nevanlinna::ap_proxy(p, y, truncs);
  }, py::arg("pair"), py::arg("y"), py::arg("truncs"));
}
