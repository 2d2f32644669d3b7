#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mdnls/cli.hpp"
#include "mdnls/config.hpp"
#include "mdnls/evolution.hpp"
#include "mdnls/experiments.hpp"
#include "mdnls/report.hpp"
#include "mdnls/scaling.hpp"
#include "mdnls/spectral.hpp"

namespace py = pybind11;
using namespace mdnls;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

Field to_field(const Grid& g, const CArray& a) {
  if (static_cast<std::size_t>(a.size()) != g.size()) {
    throw std::invalid_argument("array has " + std::to_string(a.size()) + " values, grid needs " +
                                std::to_string(g.size()));
  }
  return Field(g, std::vector<Complex>(a.data(), a.data() + a.size()));
}

CArray to_array(const Grid& g, std::span<const Complex> v) {
  std::vector<py::ssize_t> shape(static_cast<std::size_t>(g.dim()), static_cast<py::ssize_t>(g.points()));
  CArray out(shape);
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict report_dict(const ExperimentReport& r) {
  py::dict d;
  d["kind"] = std::string(to_string(r.kind));
  d["columns"] = r.columns;
  py::list rows;
  for (const auto& row : r.rows) {
    py::list cells;
    for (const auto& c : row) std::visit([&](const auto& v) { cells.append(v); }, c);
    rows.append(cells);
  }
  d["rows"] = rows;
  py::dict fitted;
  for (const auto& f : r.fitted) fitted[py::str(f.name)] = py::make_tuple(f.value, f.residual);
  d["fitted"] = fitted;
  d["checks"] = r.checks;
  d["notes"] = r.notes;
  d["verdict"] = r.verdict;
  d["csv"] = to_csv(r);
  return d;
}

}  // namespace

PYBIND11_MODULE(_mdnls, m) {
  m.doc() = "Pseudospectral laboratory for modified-dispersion NLS";

  py::class_<Grid>(m, "Grid")
      .def(py::init<int, std::size_t, double>(), py::arg("dim"), py::arg("points"), py::arg("half_length"))
      .def_property_readonly("dim", &Grid::dim)
      .def_property_readonly("points", &Grid::points)
      .def_property_readonly("half_length", &Grid::half_length)
      .def_property_readonly("spacing", &Grid::spacing)
      .def("nodes", [](const Grid& g) {
        std::vector<double> x(g.points());
        for (std::size_t j = 0; j < g.points(); ++j) x[j] = g.node(j);
        return x;
      })
      .def("frequencies", [](const Grid& g) {
        std::vector<double> xi(g.points());
        for (std::size_t i = 0; i < g.points(); ++i) xi[i] = g.frequency(i);
        return xi;
      })
      .def("__repr__", [](const Grid& g) {
        std::ostringstream s;
        s << "Grid(dim=" << g.dim() << ", points=" << g.points() << ", half_length=" << g.half_length() << ")";
        return s.str();
      });

  py::class_<Symbol>(m, "Symbol")
      .def_property_readonly("name", &Symbol::name)
      .def_property_readonly("is_homogeneous", &Symbol::is_homogeneous)
      .def_property_readonly("is_bounded", &Symbol::is_bounded)
      .def("__call__", [](const Symbol& P, std::vector<double> xi) { return P(std::span<const double>(xi)); })
      .def("rescaled", &Symbol::rescaled, py::arg("amplitude"), py::arg("inner"))
      .def("__repr__", [](const Symbol& P) { return "Symbol('" + P.name() + "')"; });

  m.def("make_symbol", &make_symbol, py::arg("key"), py::arg("params") = SymbolParams{});
  m.def("parse_symbol", &parse_symbol, py::arg("text"));
  m.def("symbol_keys", [] {
    std::vector<std::string> keys;
    for (auto k : symbol_keys()) keys.emplace_back(k);
    return keys;
  });

  m.def("transform", [](const Grid& g, const CArray& f) { return to_array(g, transform(to_field(g, f)).coeffs()); },
        py::arg("grid"), py::arg("values"));
  m.def("inverse_transform",
        [](const Grid& g, const CArray& c) {
          SpectralField F(g, std::vector<Complex>(c.data(), c.data() + c.size()));
          return to_array(g, inverse_transform(F).values());
        },
        py::arg("grid"), py::arg("coeffs"));
  m.def("free_propagate",
        [](const Grid& g, const CArray& f, const Symbol& P, double t) {
          return to_array(g, free_propagate(to_field(g, f), P, t).values());
        },
        py::arg("grid"), py::arg("values"), py::arg("symbol"), py::arg("t"));
  m.def("sobolev_norm",
        [](const Grid& g, const CArray& f, double s, bool homogeneous) {
          return sobolev_norm(to_field(g, f), s, homogeneous);
        },
        py::arg("grid"), py::arg("values"), py::arg("s"), py::arg("homogeneous") = false);
  m.def("lebesgue_norm", [](const Grid& g, const CArray& f, double q) { return lebesgue_norm(to_field(g, f), q); },
        py::arg("grid"), py::arg("values"), py::arg("q"));

  m.def("evolve",
        [](const Grid& g, const CArray& u0, const Symbol& P, double lambda, double sigma, double dt, double T,
           double eps, int snapshot_every) {
          SolveConfig cfg;
          cfg.symbol = P;
          cfg.lambda = lambda;
          cfg.sigma = sigma;
          cfg.dt = dt;
          cfg.T = T;
          cfg.eps = eps;
          cfg.snapshot_every = snapshot_every;
          const auto traj = evolve(to_field(g, u0), cfg);
          py::list times, fields;
          for (const auto& s : traj.snapshots) {
            times.append(s.t);
            fields.append(to_array(g, s.field.values()));
          }
          return py::make_tuple(times, fields);
        },
        py::arg("grid"), py::arg("u0"), py::arg("symbol"), py::arg("lambda_") = 1.0, py::arg("sigma") = 1.0,
        py::arg("dt") = 1e-3, py::arg("T") = 1.0, py::arg("eps") = 1.0, py::arg("snapshot_every") = 1);

  py::class_<ScalingPlan>(m, "ScalingPlan")
      .def_readonly("dim", &ScalingPlan::dim)
      .def_readonly("sigma", &ScalingPlan::sigma)
      .def_readonly("s", &ScalingPlan::s)
      .def_readonly("s0", &ScalingPlan::s0)
      .def_readonly("two_plus_alpha", &ScalingPlan::two_plus_alpha)
      .def_readonly("alpha", &ScalingPlan::alpha)
      .def_readonly("eps_exponent", &ScalingPlan::eps_exponent)
      .def_readonly("beta", &ScalingPlan::beta)
      .def("eps", &ScalingPlan::eps)
      .def("kappa", &ScalingPlan::kappa)
      .def("t_h", &ScalingPlan::t_h)
      .def("growth_exponent", &ScalingPlan::growth_exponent);
  m.def(
      "compute_scaling",
      [](int dim, double sigma, double s, const Symbol& P, double omega, double theta, double delta) {
        return compute_scaling(dim, sigma, s, P.symbol_class(), omega, theta, delta);
      },
      py::arg("dim"), py::arg("sigma"), py::arg("s"), py::arg("symbol"), py::arg("omega") = 1.0,
      py::arg("theta") = 0.05, py::arg("delta") = 0.1);

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  m.def("resolve_config", [](const std::string& text, const std::string& sub) { return serialize(parse_config(text, sub)); },
        py::arg("text"), py::arg("subcommand"));
  m.def(
      "run",
      [](const std::string& text, const std::string& sub) {
        const auto cfg = parse_config(text, sub);
        ExperimentReport r;
        {
          py::gil_scoped_release release;
          r = run_experiment(cfg);
        }
        return report_dict(r);
      },
      py::arg("config_text"), py::arg("subcommand"));
  m.def("run_cli", [](std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
