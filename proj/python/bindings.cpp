#include "cmxprony/catalog.hpp"
#include "cmxprony/cmx_engine.hpp"
#include "cmxprony/commands.hpp"
#include "cmxprony/exact_refs.hpp"
#include "cmxprony/prony.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cmx;

namespace {

std::vector<std::string> rational_strings(const std::vector<Rational>& values) {
  std::vector<std::string> out;
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

EngineOptions engine(const std::string& precision) {
  EngineOptions options;
  options.precision = Precision::parse(precision);
  return options;
}

MomentSequence model_moments(const std::string& model, int highest) {
  const auto& entry = catalog_entry(model);
  return moments(entry.hamiltonian, entry.trial, highest, entry.name);
}

py::dict prony_dict(const PronySolution& s) {
  py::dict d;
  d["exponents"] = s.exponents;
  d["amplitudes"] = s.amplitudes;
  d["residual"] = s.residual;
  d["hankel_condition"] = s.hankel_condition;
  return d;
}

}  // namespace

PYBIND11_MODULE(_cmxprony, m) {
  m.doc() = "Prony fits and connected-moments expansions from exact Hamiltonian moments";

  auto base = py::register_exception<Error>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DegenerateProblem>(m, "DegenerateProblem", base.ptr());

  m.def("catalog_names", [] {
    std::vector<std::string> names;
    for (const auto& entry : catalog()) names.push_back(entry.name);
    return names;
  });

  m.def("moments", [](const std::string& model, int highest) { return rational_strings(model_moments(model, highest).mu); },
        py::arg("model"), py::arg("highest") = kDefaultMomentOrder, "Exact moments mu_0..mu_J as 'p/q' strings.");

  m.def("connected_moments",
        [](const std::string& model, int highest) {
          return rational_strings(connected_moments(model_moments(model, highest)).values);
        },
        py::arg("model"), py::arg("highest") = kDefaultMomentOrder, "Exact I_1..I_J as 'p/q' strings.");

  m.def("zfit",
        [](const std::string& model, int order, const std::string& precision) {
          const auto z = zn_from_moments(model_moments(model, 2 * order - 1), order, engine(precision));
          py::dict d;
          d["amplitudes"] = z.amplitudes;
          d["exponents"] = z.exponents;
          d["residual"] = z.solution.residual;
          return d;
        },
        py::arg("model"), py::arg("order"), py::arg("precision") = "ext:50");

  m.def("cmx",
        [](const std::string& model, int order, const std::string& precision) {
          const auto c = cmx_from_connected(connected_moments(model_moments(model, 2 * order + 1)), order, engine(precision));
          py::dict d;
          d["A0"] = c.ground_energy;
          d["amplitudes"] = c.amplitudes;
          d["exponents"] = c.exponents;
          d["limit_behavior"] = to_string(c.diagnostics.limit_behavior);
          d["negative_real_roots"] = c.diagnostics.negative_real_roots;
          d["hadamard_base"] = rational_strings(c.hadamard.base);
          d["hadamard_shifted"] = rational_strings(c.hadamard.shifted);
          return d;
        },
        py::arg("model"), py::arg("order"), py::arg("precision") = "ext:50");

  m.def("prony",
        [](const std::vector<std::string>& values, int shift, const std::string& method, const std::string& precision) {
          std::vector<Rational> exact;
          for (const auto& v : values) exact.push_back(parse_rational(v));
          SolveOptions options;
          options.precision = Precision::parse(precision);
          const auto kind = method == "linear" ? PronyMethod::LinearPolynomial : PronyMethod::SecularPencil;
          return prony_dict(solve(PronyProblem::from_rationals(exact, shift), kind, options));
        },
        py::arg("values"), py::arg("shift") = 0, py::arg("method") = "secular", py::arg("precision") = "double",
        "Solve F_k = sum A_n b_n^(k+s), k = 1..2N, from exact values given as strings.");

  m.def("exact_E_ho", &exact_E_ho, py::arg("t"));
  m.def("exact_C2_ho", &exact_C2_ho, py::arg("tau"));

  m.def("run",
        [](const std::string& command, const std::string& model, const std::string& config_text,
           const std::string& orders, const std::string& grid, const std::string& format, const std::string& precision) {
          RunConfig config = config_text.empty() ? RunConfig{} : parse_config(config_text);
          if (!model.empty()) select_catalog_model(config, model);
          if (!config.hamiltonian) select_catalog_model(config, "ho-quadratic");
          if (!orders.empty()) config.orders = OrderRange::parse(orders);
          if (!grid.empty()) config.t_grid = TimeGrid::parse(grid);
          config.format = parse_format(format);
          if (!precision.empty()) config.precision = Precision::parse(precision);
          return run_command(command, config).text;
        },
        py::arg("command"), py::arg("model") = "", py::arg("config") = "", py::arg("N") = "", py::arg("t") = "",
        py::arg("format") = "csv", py::arg("precision") = "",
        "Run a CLI subcommand in-process and return its CSV/JSON text.");
}
