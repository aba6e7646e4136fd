// Python bindings: matrix kernels on NumPy arrays plus JSON-in/JSON-out
// scenario runs.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "measurelab/scenario.hpp"

namespace py = pybind11;
using namespace mlab;

namespace {

ComplexMatrix wrap(const DenseMatrix& m) { return ComplexMatrix(m); }

StateVector state_of(const DenseVector& v) { return StateVector(v); }

std::string run_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("$: ") + e.what());
  }
  if (j.is_array()) return to_json(run_batch(parse_batch(j))).dump();
  return to_json(run(parse_config(j))).dump();
}

}  // namespace

PYBIND11_MODULE(_measurelab, m) {
  m.doc() = "Finite-dimensional measurement-problem laboratory";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ZeroProbabilityError>(m, "ZeroProbabilityError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  m.attr("SCHEMA_VERSION") = kSchemaVersion;

  m.def("tensor", [](const DenseMatrix& a, const DenseMatrix& b) { return tensor(wrap(a), wrap(b)).dense(); });
  m.def("adjoint", [](const DenseMatrix& a) { return adjoint(wrap(a)).dense(); });
  m.def("trace", [](const DenseMatrix& a) { return trace(wrap(a)); });
  m.def("commutator",
        [](const DenseMatrix& a, const DenseMatrix& b) { return commutator(wrap(a), wrap(b)).dense(); });

  m.def(
      "eig_hermitian",
      [](const DenseMatrix& a, double tol) {
        std::vector<std::pair<double, DenseMatrix>> out;
        const SpectralFamily family = eig_hermitian(wrap(a), tol);
        for (const auto& p : family.pairs()) out.emplace_back(p.value, p.projector.dense());
        return out;
      },
      py::arg("a"), py::arg("degeneracy_tol") = kDegeneracyTolerance,
      "Distinct eigenvalues in ascending order with their spectral projectors.");

  m.def(
      "complete_to_unitary",
      [](const std::vector<std::pair<DenseVector, DenseVector>>& pairs) {
        std::vector<std::pair<StateVector, StateVector>> states;
        for (const auto& [in, out] : pairs) states.emplace_back(state_of(in), state_of(out));
        return complete_to_unitary(states).dense();
      },
      py::arg("pairs"));

  m.def(
      "born_pure",
      [](const DenseVector& psi, const DenseMatrix& a, double lo, double hi) {
        return born_pure(state_of(psi), Magnitude("A", wrap(a)), Interval::closed(lo, hi));
      },
      py::arg("psi"), py::arg("a"), py::arg("lo"), py::arg("hi"),
      "Probability that A takes a value in [lo, hi] in the pure state psi.");

  m.def(
      "born_mixed",
      [](const DenseMatrix& w, const DenseMatrix& a, double lo, double hi) {
        return born_mixed(DensityOperator(wrap(w)), Magnitude("A", wrap(a)), Interval::closed(lo, hi));
      },
      py::arg("w"), py::arg("a"), py::arg("lo"), py::arg("hi"));

  m.def("run_scenario", &run_json, py::arg("config"),
        "Runs a scenario config (or a list of them) given as JSON text; returns the report JSON.");
}
