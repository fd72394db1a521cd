#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kwise/bonferroni.hpp"
#include "kwise/cli.hpp"
#include "kwise/serialize.hpp"

namespace py = pybind11;
using namespace kwise;

namespace {

// Exact values cross the boundary as "a/b" strings; the Python layer turns
// them into fractions.Fraction.
std::string exact(const Rational& q) { return to_string(q); }

EvalMode parse_mode(const std::string& mode) {
  if (mode == "piecewise") return EvalMode::piecewise;
  if (mode == "oracle") return EvalMode::oracle;
  if (mode == "checked") return EvalMode::checked;
  throw ParameterError("mode must be piecewise, oracle or checked");
}

}  // namespace

PYBIND11_MODULE(_kwise, m) {
  m.doc() = "Exact maximum of P(all ones) under k-wise independence";

  auto parameter_error = py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<FormulaDomainError>(m, "FormulaDomainError", PyExc_ValueError);
  py::register_exception<OracleMismatch>(m, "OracleMismatch", PyExc_RuntimeError);
  py::register_exception<TilingError>(m, "TilingError", PyExc_RuntimeError);
  (void)parameter_error;

  m.attr("SCHEMA") = kSchemaVersion;

  m.def("m_value", [](int n, int k, const std::string& p, const std::string& mode) {
    return exact(m_value(n, k, parse_rational(p), parse_mode(mode)));
  }, py::arg("n"), py::arg("k"), py::arg("p"), py::arg("mode") = "piecewise");

  m.def("simplex_value", [](int n, int k, const std::string& p) {
    return exact(simplex_solve(n, k, parse_rational(p)).value);
  }, py::arg("n"), py::arg("k"), py::arg("p"));

  m.def("piecewise_json", [](int n, int k, unsigned jobs) {
    py::gil_scoped_release release;
    return to_json(piecewise(n, k, jobs)).dump();
  }, py::arg("n"), py::arg("k"), py::arg("jobs") = 1);

  m.def("distribution_json", [](int n, int k, const std::string& p) {
    return to_json(optimizing_distribution(n, k, parse_rational(p)).distribution).dump();
  }, py::arg("n"), py::arg("k"), py::arg("p"));

  m.def("verify_json", [](int n, int k, const std::set<std::string>& which) {
    py::gil_scoped_release release;
    Json out = Json::array();
    for (const auto& c : verify_theorems(n, k, which)) out.push_back(to_json(c));
    return out.dump();
  }, py::arg("n"), py::arg("k"), py::arg("theorems") = std::set<std::string>{"all"});

  m.def("study_json", [](int n, int k) {
    py::gil_scoped_release release;
    return to_json(study(n, k)).dump();
  }, py::arg("n"), py::arg("k"));

  m.def("bonferroni", [](long mm, long l) {
    std::vector<std::string> out;
    Polynomial b = bonferroni_poly(mm, l);
    for (const auto& c : b.coeffs()) out.push_back(exact(c));
    return out;
  }, py::arg("m"), py::arg("l"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
