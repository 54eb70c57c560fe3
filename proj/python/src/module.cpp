#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <memory>
#include <optional>

#include "heatbound/bath.hpp"
#include "heatbound/dynamics.hpp"
#include "heatbound/errors.hpp"
#include "heatbound/observables.hpp"
#include "heatbound/oracle.hpp"
#include "heatbound/sweep.hpp"

namespace py = pybind11;
using namespace heatbound;

namespace {

using Vec3 = std::array<double, 3>;

BlochVector bloch(const Vec3& v) { return {v[0], v[1], v[2]}; }
Vec3 tuple(const BlochVector& v) { return {v.x, v.y, v.z}; }

SpectralDensity ohmic_or_modes(double coupling, double cutoff,
                               const std::optional<std::vector<std::pair<double, double>>>& modes) {
  if (!modes) return OhmicExpCutoff{coupling, cutoff};
  DiscreteModes d;
  for (const auto& [w, g2] : *modes) d.modes.push_back({w, g2});
  return d;
}

TruncatedEnvironment environment(const std::vector<std::pair<double, double>>& modes, std::size_t n_max,
                                 double truncation_budget) {
  TruncatedEnvironment env;
  for (const auto& [w, g] : modes) env.modes.push_back({w, g});
  env.n_max = n_max;
  env.truncation_budget = truncation_budget;
  return env;
}

py::dict sample_dict(const BoundsSample& s) {
  py::dict d;
  d["t"] = s.t;
  d["bloch"] = tuple(s.bloch);
  d["v0_beta"] = s.v0_beta;
  d["beta_Q"] = s.beta_heat;
  d["B_en"] = s.entropic;
  d["B_th"] = s.thermodynamic;
  return d;
}

struct Engine {
  std::unique_ptr<Bath> bath;
  std::unique_ptr<BoundsEngine> engine;
};

}  // namespace

PYBIND11_MODULE(_heatbound, m) {
  m.doc() = "Heat dissipation and Landauer-type bounds for a spin-boson qubit";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);
  py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<TruncationError>(m, "TruncationError", PyExc_ValueError);

  m.def("von_neumann_entropy", [](const Vec3& v) { return von_neumann_entropy(bloch(v)); }, py::arg("v"));
  m.def("entropic_bound", [](const Vec3& a, const Vec3& b) { return entropic_bound(bloch(a), bloch(b)); },
        py::arg("v_initial"), py::arg("v_t"));
  m.def("thermodynamic_bound", &thermodynamic_bound, py::arg("v0_beta"));
  m.def("tighter_bound", [](double en, double th) { return std::string(to_string(tighter_bound(en, th))); },
        py::arg("entropic"), py::arg("thermodynamic"));
  m.def("bloch_disk_grid", [](std::size_t radial, std::size_t angular, double r_max) {
    std::vector<Vec3> out;
    for (const auto& p : bloch_disk_grid({radial, angular, r_max})) out.push_back(tuple(p));
    return out;
  }, py::arg("radial") = 30, py::arg("angular") = 24, py::arg("r_max") = 0.95);
  m.def("uniform_grid", &uniform_grid, py::arg("t_final"), py::arg("step"));

  m.def("evolve", [](const Vec3& v, double eta, double t_final, double step, double coupling, double cutoff,
                     double beta, const std::optional<std::vector<std::pair<double, double>>>& modes) {
    const Bath bath(ohmic_or_modes(coupling, cutoff, modes), BathParams{beta});
    const auto grid = uniform_grid(t_final, step);
    py::gil_scoped_release release;
    const auto traj = evolve(bloch(v), eta, bath, 1.0, t_final, grid);
    std::vector<std::pair<double, std::array<std::complex<double>, 4>>> out;
    for (const auto& s : traj.samples) out.push_back({s.t, {s.v[0], s.v[1], s.v[2], s.v[3]}});
    return out;
  }, py::arg("initial"), py::arg("eta"), py::arg("t_final"), py::arg("step") = 0.1, py::arg("coupling") = 0.1,
     py::arg("cutoff") = 0.4, py::arg("beta") = 1.0, py::arg("modes") = py::none());

  py::class_<Engine>(m, "BoundsEngine")
      .def(py::init([](double horizon, double coupling, double cutoff, double beta,
                       const std::optional<std::vector<std::pair<double, double>>>& modes) {
             Engine e;
             e.bath = std::make_unique<Bath>(ohmic_or_modes(coupling, cutoff, modes), BathParams{beta});
             py::gil_scoped_release release;
             e.engine = std::make_unique<BoundsEngine>(*e.bath, 1.0, horizon);
             return e;
           }),
           py::arg("horizon") = 50.0, py::arg("coupling") = 0.1, py::arg("cutoff") = 0.4, py::arg("beta") = 1.0,
           py::arg("modes") = py::none())
      .def_property_readonly("horizon", [](const Engine& e) { return e.engine->horizon(); })
      .def("sample", [](const Engine& e, const Vec3& v, double t) { return sample_dict(e.engine->sample(bloch(v), t)); },
           py::arg("initial"), py::arg("t"))
      .def("series", [](const Engine& e, const Vec3& v, const std::vector<double>& grid) {
             py::list out;
             for (const auto& s : e.engine->series(bloch(v), grid)) out.append(sample_dict(s));
             return out;
           }, py::arg("initial"), py::arg("grid"))
      .def("crossover", [](const Engine& e, const Vec3& v, double step) {
             const auto grid = uniform_grid(e.engine->horizon(), step);
             const auto r = e.engine->crossover(bloch(v), grid);
             return py::make_tuple(r.first, r.later);
           }, py::arg("initial"), py::arg("step") = 0.1)
      .def("sweep", [](const Engine& e, double t_bar, std::size_t radial, std::size_t angular, double r_max,
                       std::size_t threads) {
             SweepOptions opt;
             opt.threads = threads;
             std::vector<SweepRecord> records;
             {
               py::gil_scoped_release release;
               records = sweep_bounds({radial, angular, r_max}, *e.engine, t_bar, opt);
             }
             py::list out;
             for (const auto& r : records) {
               py::dict d;
               d["vx0"] = r.initial.x;
               d["vz0"] = r.initial.z;
               d["beta_Q"] = r.beta_heat;
               d["B_en"] = r.entropic;
               d["B_th"] = r.thermodynamic;
               d["tighter"] = r.failed ? std::string("failed") : std::string(to_string(r.tighter));
               out.append(d);
             }
             return out;
           }, py::arg("t_bar") = 50.0, py::arg("radial") = 30, py::arg("angular") = 24, py::arg("r_max") = 0.95,
           py::arg("threads") = 1)
      .def("crossover_map", [](const Engine& e, std::size_t radial, std::size_t angular, double r_max,
                               std::size_t threads) {
             SweepOptions opt;
             opt.threads = threads;
             std::vector<CrossoverRecord> records;
             {
               py::gil_scoped_release release;
               records = crossover_map({radial, angular, r_max}, *e.engine, e.engine->horizon(), opt);
             }
             std::vector<std::tuple<double, double, std::optional<double>>> out;
             for (const auto& r : records) out.emplace_back(r.initial.x, r.initial.z, r.crossover);
             return out;
           }, py::arg("radial") = 30, py::arg("angular") = 24, py::arg("r_max") = 0.95, py::arg("threads") = 1);

  m.def("exact_modified_trace", [](const Vec3& v, double eta, double t, const std::vector<std::pair<double, double>>& modes,
                                   std::size_t n_max, double beta, double budget) {
    return exact_modified_trace(bloch(v), environment(modes, n_max, budget), BathParams{beta}, eta, t);
  }, py::arg("initial"), py::arg("eta"), py::arg("t"), py::arg("modes"), py::arg("n_max") = 12, py::arg("beta") = 1.0,
     py::arg("truncation_budget") = 1e-5);

  m.def("landauer_terms", [](const Vec3& v, double t, const std::vector<std::pair<double, double>>& modes,
                             std::size_t n_max, double beta, double budget) {
    const auto terms = landauer_equality_terms(bloch(v), environment(modes, n_max, budget), BathParams{beta}, t);
    py::dict d;
    d["beta_Q"] = terms.beta_heat;
    d["delta_S"] = terms.entropy_decrease;
    d["mutual_information"] = terms.mutual_information;
    d["relative_entropy"] = terms.relative_entropy;
    d["residual"] = terms.residual();
    return d;
  }, py::arg("initial"), py::arg("t"), py::arg("modes"), py::arg("n_max") = 12, py::arg("beta") = 1.0,
     py::arg("truncation_budget") = 1e-5);

  m.def("scaling_report", [](const Vec3& v, const std::vector<double>& times, const std::vector<double>& scales,
                             const std::vector<std::pair<double, double>>& modes, std::size_t n_max, double beta) {
    ScalingReport report;
    {
      py::gil_scoped_release release;
      report = tcl2_vs_exact_report(bloch(v), environment(modes, n_max, 1e-5), BathParams{beta}, 1.0, times, scales);
    }
    py::list rows;
    for (const auto& r : report.rows) {
      py::dict d;
      d["scale"] = r.scale;
      d["dev_vz"] = r.dev_vz;
      d["dev_v0_beta"] = r.dev_v0_beta;
      d["dev_heat"] = r.dev_heat;
      rows.append(d);
    }
    py::list ratios;
    for (const auto& q : report.ratios()) {
      py::dict d;
      d["from_scale"] = q.from_scale;
      d["to_scale"] = q.to_scale;
      d["vz"] = q.vz;
      d["v0_beta"] = q.v0_beta;
      d["heat"] = q.heat;
      ratios.append(d);
    }
    return py::make_tuple(rows, ratios);
  }, py::arg("initial"), py::arg("times"), py::arg("scales"), py::arg("modes") = std::vector<std::pair<double, double>>{{1.0, 1.0}},
     py::arg("n_max") = 16, py::arg("beta") = 1.0);
}
