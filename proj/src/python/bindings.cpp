#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kerrspec/errors.hpp"
#include "kerrspec/horizon.hpp"
#include "kerrspec/inverse.hpp"
#include "kerrspec/numerics.hpp"
#include "kerrspec/spectral.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace kerrspec;

namespace {

numerics::SymMatrix to_matrix(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  numerics::SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw Error(ErrorCode::InvalidArgument, "matrix must be square");
    for (std::size_t j = 0; j <= i; ++j) {
      if (rows[i][j] != rows[j][i]) throw Error(ErrorCode::InvalidArgument, "matrix must be symmetric");
      m.set(i, j, rows[i][j]);
    }
  }
  return m;
}

std::vector<std::vector<double>> to_rows(const numerics::SymMatrix& m) {
  const std::size_t n = m.dimension();
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = R"pbdoc(
        Spectra of Kerr-Newman horizon Laplacians and recovery of the
        horizon metric and (m, a) from Green's-operator traces.
    )pbdoc";

  py::register_exception<Error>(m, "KerrspecError", PyExc_ValueError);

  py::class_<horizon::PhysicalParams>(m, "PhysicalParams")
      .def(py::init<>())
      .def(py::init([](double mass, double a, double e) { return horizon::PhysicalParams{mass, a, e}; }),
           py::arg("m"), py::arg("a") = 0.0, py::arg("e") = 0.0)
      .def_readwrite("m", &horizon::PhysicalParams::m)
      .def_readwrite("a", &horizon::PhysicalParams::a)
      .def_readwrite("e", &horizon::PhysicalParams::e)
      .def("__repr__", [](const horizon::PhysicalParams& p) {
        return "PhysicalParams(m=" + std::to_string(p.m) + ", a=" + std::to_string(p.a) +
               ", e=" + std::to_string(p.e) + ")";
      });

  py::class_<horizon::SmarrShape>(m, "SmarrShape")
      .def(py::init<>())
      .def(py::init([](double eta2, double beta2) { return horizon::SmarrShape{eta2, beta2}; }),
           py::arg("eta2"), py::arg("beta2"))
      .def_readwrite("eta2", &horizon::SmarrShape::eta2)
      .def_readwrite("beta2", &horizon::SmarrShape::beta2)
      .def("__repr__", [](const horizon::SmarrShape& s) {
        return "SmarrShape(eta2=" + std::to_string(s.eta2) + ", beta2=" + std::to_string(s.beta2) + ")";
      });

  py::class_<horizon::MetricProfile>(m, "MetricProfile")
      .def_property_readonly("shape", &horizon::MetricProfile::shape)
      .def("__call__", &horizon::MetricProfile::operator(), py::arg("x"))
      .def("derivative", &horizon::MetricProfile::derivative, py::arg("x"))
      .def("g_xx", &horizon::MetricProfile::g_xx, py::arg("x"))
      .def("g_phiphi", &horizon::MetricProfile::g_phiphi, py::arg("x"));

  // numerics
  m.def("gauss_legendre", [](int order) {
    const auto rule = numerics::gauss_legendre(order);
    return py::make_tuple(rule.nodes, rule.weights);
  }, py::arg("order"), "Gauss-Legendre (nodes, weights) on [-1, 1].");
  m.def("sym_eigenvalues", [](const std::vector<std::vector<double>>& rows) {
    return numerics::sym_eigenvalues(to_matrix(rows));
  }, py::arg("matrix"), "Ascending eigenvalues of a dense symmetric matrix.");
  m.def("assoc_legendre_normalized", &numerics::assoc_legendre_normalized,
        py::arg("l"), py::arg("k"), py::arg("x"));

  // horizon
  m.def("validate", [](const horizon::PhysicalParams& p) { return horizon::validate(p).extremal; },
        py::arg("params"), "Raises unless a horizon exists; returns True when extremal.");
  m.def("r_plus", &horizon::r_plus, py::arg("params"));
  m.def("smarr_from_physical", &horizon::smarr_from_physical, py::arg("params"));
  m.def("physical_from_smarr", &horizon::physical_from_smarr, py::arg("shape"), py::arg("charge") = 0.0);
  m.def("profile", &horizon::profile, py::arg("shape"));
  m.def("gauss_curvature", &horizon::gauss_curvature, py::arg("shape"), py::arg("x"));
  m.def("area", &horizon::area, py::arg("shape"));

  // spectral
  py::class_<spectral::ModeSpectrum>(m, "ModeSpectrum")
      .def_readonly("k", &spectral::ModeSpectrum::k)
      .def_readonly("eigenvalues", &spectral::ModeSpectrum::eigenvalues)
      .def_readonly("basis_size", &spectral::ModeSpectrum::basis_size)
      .def_readonly("shape", &spectral::ModeSpectrum::shape);

  py::class_<spectral::TraceEstimate>(m, "TraceEstimate")
      .def_readonly("k", &spectral::TraceEstimate::k)
      .def_readonly("value", &spectral::TraceEstimate::value)
      .def_readonly("partial_sum", &spectral::TraceEstimate::partial_sum)
      .def_readonly("tail_correction", &spectral::TraceEstimate::tail_correction)
      .def_readonly("modes_used", &spectral::TraceEstimate::modes_used);

  m.def("assemble", [](int k, const horizon::SmarrShape& s, int n) { return to_rows(spectral::assemble(k, s, n)); },
        py::arg("k"), py::arg("shape"), py::arg("basis_size"));
  m.def("eigenvalues", [](int k, const horizon::SmarrShape& s, int count, int basis_size) {
    return spectral::eigenvalues(k, s, count, basis_size > 0 ? basis_size : spectral::default_basis_size(count));
  }, py::arg("k"), py::arg("shape"), py::arg("count"), py::arg("basis_size") = 0,
     py::call_guard<py::gil_scoped_release>());
  m.def("trace_numeric", [](const spectral::ModeSpectrum& s, int window) {
    return spectral::trace_numeric(s, window > 0 ? window
                                                 : spectral::default_tail_window(static_cast<int>(s.eigenvalues.size())));
  }, py::arg("spectrum"), py::arg("tail_window") = 0);
  m.def("s1_trace_integral", &spectral::s1_trace_integral, py::arg("shape"));

  // inverse
  py::class_<inverse::TraceSet>(m, "TraceSet")
      .def(py::init<>())
      .def(py::init([](double g0, std::map<int, double> gk) { return inverse::TraceSet{g0, std::move(gk)}; }),
           py::arg("gamma0"), py::arg("equivariant"))
      .def_readwrite("gamma0", &inverse::TraceSet::gamma0)
      .def_readwrite("equivariant", &inverse::TraceSet::equivariant)
      .def("gamma", &inverse::TraceSet::gamma, py::arg("k"));

  py::class_<inverse::ReconstructionReport>(m, "ReconstructionReport")
      .def_readonly("shape", &inverse::ReconstructionReport::shape)
      .def_readonly("physical", &inverse::ReconstructionReport::physical)
      .def_readonly("r_plus", &inverse::ReconstructionReport::r_plus)
      .def_readonly("area", &inverse::ReconstructionReport::area)
      .def_readonly("channel", &inverse::ReconstructionReport::channel)
      .def_readonly("clamped_beta2", &inverse::ReconstructionReport::clamped_beta2)
      .def_readonly("clamped_spin", &inverse::ReconstructionReport::clamped_spin)
      .def_readonly("mass_depends_on_charge", &inverse::ReconstructionReport::mass_depends_on_charge)
      .def_readonly("mass_crosscheck", &inverse::ReconstructionReport::mass_crosscheck)
      .def_property_readonly("residuals", [](const inverse::ReconstructionReport& r) {
        std::map<int, double> out;
        for (const auto& c : r.residuals) out[c.k] = c.deviation;
        return out;
      });

  m.def("traces_closed_form", &inverse::traces_closed_form, py::arg("shape"), py::arg("k_max") = 1);
  m.def("shape_from_traces", [](const inverse::TraceSet& t, int k) {
    const auto r = inverse::shape_from_traces(t, k);
    return py::make_tuple(r.shape, r.clamped_beta2);
  }, py::arg("traces"), py::arg("k") = 1, "Returns (SmarrShape, clamped_beta2).");
  m.def("reconstruct_metric", &inverse::reconstruct_metric, py::arg("traces"));
  m.def("physical_from_traces", &inverse::physical_from_traces, py::arg("traces"), py::arg("charge") = 0.0,
        py::arg("channel") = 1);
  m.def("roundtrip", [](const horizon::PhysicalParams& p, bool numeric, int count, int basis_size) {
    const auto rt = inverse::roundtrip(p, numeric, count, basis_size);
    return py::make_tuple(rt.report, rt.max_deviation);
  }, py::arg("params"), py::arg("numeric") = false, py::arg("count") = 60, py::arg("basis_size") = 0,
     "Returns (ReconstructionReport, max relative deviation of m and a).");

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
