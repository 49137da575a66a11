// Copyright 2026 The cqfi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python module cqfi._core: the operations of the C++ library on numpy
// arrays. Results come back as dicts of floats and arrays.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "cqfi/conditional.hpp"
#include "cqfi/experiment.hpp"
#include "cqfi/info_geometry.hpp"
#include "cqfi/jump_unraveling.hpp"
#include "cqfi/models.hpp"
#include "cqfi/sld_qfi.hpp"

namespace py = pybind11;
using namespace py::literals;

namespace cqfi {
namespace {

DrivenQubitParams driven_params(double omega, double epsilon, double gamma0, double n_bar) {
  return {omega, epsilon, gamma0, temperature_for_occupation(omega, n_bar)};
}

GaussianState gaussian_state(const Eigen::Vector2d& mean, const Eigen::Matrix2d& cov) {
  GaussianState s{mean, cov};
  s.validate();
  return s;
}

py::dict sld_dict(const Matrix& rho_m, const Matrix& drho_m) {
  const DensityMatrix rho(rho_m);
  const SldData s = solve_sld(rho, HermitianOperator(drho_m));
  const QfiSplit split = qfi_decompose(s);
  return py::dict("sld"_a = s.sld.matrix(), "qfi"_a = qfi(s, rho), "incoherent"_a = split.incoherent,
                  "coherent"_a = split.coherent, "eigenvalues"_a = s.spectral.eigenvalues,
                  "eigenvectors"_a = s.spectral.eigenvectors, "rank_deficient"_a = s.rank_deficient,
                  "lyapunov_residual"_a = s.lyapunov_residual);
}

py::dict cqfi_dict(const Matrix& rho_m, const Matrix& drho_m, const Vector& probe) {
  const DensityMatrix rho(rho_m);
  const SldData s = solve_sld(rho, HermitianOperator(drho_m));
  const CqfiSample c = cqfi_pure(PureState(probe), s, rho);
  return py::dict("total"_a = c.total, "ic"_a = c.ic, "coh"_a = c.coh, "cross"_a = c.cross,
                  "outcome_prob"_a = c.outcome_prob);
}

py::dict driven_ensemble(double omega, double epsilon, double gamma0, double n_bar, double t_final, double dt) {
  const DrivenQubitParams p = driven_params(omega, epsilon, gamma0, n_bar);
  const EnsembleSolution sol = evolve(driven_qubit_initial_state(p), build_driven_qubit(p), t_final, dt);
  const std::vector<SldData> slds = sld_series(sol);
  const FisherSeries fs = fisher_time_series(sol, slds);
  std::vector<Matrix> states;
  states.reserve(sol.states.size());
  for (const auto& r : sol.states) states.push_back(r.matrix());
  return py::dict("t"_a = sol.times, "rho"_a = states, "F_Q"_a = fs.f_q, "F_IC"_a = fs.f_ic, "F_C"_a = fs.f_c,
                  "L"_a = cumulative_length(fs.f_q, dt), "J"_a = cumulative_action(fs.f_q, dt));
}

py::dict driven_trajectory(double omega, double epsilon, double gamma0, double n_bar, double t_final, double dt,
                           std::uint64_t seed, std::uint64_t index) {
  const DrivenQubitParams p = driven_params(omega, epsilon, gamma0, n_bar);
  const GKSLModel model = build_driven_qubit(p);
  const DensityMatrix rho0 = driven_qubit_initial_state(p);
  const EnsembleSolution sol = evolve(rho0, model, t_final, dt);
  const std::vector<SldData> slds = sld_series(sol);
  const Trajectory traj = simulate_trajectory(model, rho0.spectral(), sol.grid, seed, index);
  const std::vector<CqfiTerms> terms = trajectory_cqfi(traj, sol, slds);
  std::vector<double> f, ic, coh, cross;
  for (const auto& c : terms) {
    f.push_back(c.total);
    ic.push_back(c.ic);
    coh.push_back(c.coh);
    cross.push_back(c.cross);
  }
  std::vector<Vector> psi;
  for (const auto& s : traj.states) psi.push_back(s.amplitudes());
  std::vector<std::pair<std::size_t, std::size_t>> jumps;
  for (const auto& j : traj.jumps) jumps.emplace_back(j.step, j.channel);
  return py::dict("t"_a = traj.times, "psi"_a = psi, "jumps"_a = jumps, "f"_a = f, "ic"_a = ic, "coh"_a = coh,
                  "cross"_a = cross, "ell"_a = cumulative_length(f, dt), "j"_a = cumulative_action(f, dt));
}

py::dict thermal_sensor(double delta, double theta, double beta) {
  const ThermalFieldSensorParams p{delta, theta, beta};
  const ThermalSensorClosedForm c = thermal_sensor_closed_forms(p);
  const ThermalSensorNumeric n = thermal_sensor_numeric(p);
  return py::dict("p_plus"_a = c.p_plus, "p_minus"_a = c.p_minus, "f_ic_plus"_a = c.f_ic_plus,
                  "f_ic_minus"_a = c.f_ic_minus, "f_c"_a = c.f_c, "f_c_rotation"_a = c.f_c_rotation,
                  "numeric"_a = py::dict("p_plus"_a = n.p_plus, "p_minus"_a = n.p_minus, "f_ic_plus"_a = n.f_ic_plus,
                                         "f_ic_minus"_a = n.f_ic_minus, "f_c_plus"_a = n.f_c_plus,
                                         "f_c_minus"_a = n.f_c_minus, "cross_plus"_a = n.cross_plus,
                                         "cross_minus"_a = n.cross_minus, "f_q"_a = n.f_q));
}

py::dict run(const std::string& config, std::optional<std::uint64_t> seed, std::optional<std::size_t> n_trajs,
             std::optional<std::string> out) {
  ExperimentConfig cfg = validate_config(config);
  if (seed) cfg.master_seed = *seed;
  if (n_trajs) cfg.n_trajs = *n_trajs;
  if (out) cfg.directory = *out;
  RunReport r;
  {
    py::gil_scoped_release release;
    r = run_experiment(cfg);
  }
  py::dict checks;
  for (const auto& c : r.checks) {
    checks[py::int_(c.criterion)] =
        py::dict("name"_a = c.name, "status"_a = to_string(c.status), "value"_a = c.value, "threshold"_a = c.threshold);
  }
  return py::dict("config_hash"_a = r.config_hash, "directory"_a = cfg.directory, "all_pass"_a = r.all_pass(),
                  "checks"_a = checks);
}

}  // namespace
}  // namespace cqfi

PYBIND11_MODULE(_core, m) {
  using namespace cqfi;
  m.doc() = "Conditional quantum Fisher information along quantum-jump trajectories";
  py::register_exception<Error>(m, "CqfiError", PyExc_RuntimeError);

  m.def("sld", &sld_dict, "rho"_a, "drho"_a, "SLD, QFI and its incoherent/coherent split");
  m.def(
      "qfi", [](const Matrix& rho, const Matrix& drho) { return py::float_(sld_dict(rho, drho)["qfi"]); }, "rho"_a,
      "drho"_a);
  m.def("cqfi", &cqfi_dict, "rho"_a, "drho"_a, "probe"_a, "<a|L^2|a> and its ic/coh/cross decomposition");
  m.def(
      "stochastic_fisher",
      [](const Matrix& povm, const Matrix& rho, const Matrix& drho) {
        return stochastic_fisher(HermitianOperator(povm), DensityMatrix(rho), HermitianOperator(drho));
      },
      "povm"_a, "rho"_a, "drho"_a);
  m.def(
      "cqfi_trace_form",
      [](const Matrix& povm, const Matrix& rho_m, const Matrix& drho) {
        const DensityMatrix rho(rho_m);
        return cqfi_trace_form(HermitianOperator(povm), solve_sld(rho, HermitianOperator(drho)), rho);
      },
      "povm"_a, "rho"_a, "drho"_a);
  m.def("bose_occupation", &bose_occupation, "omega"_a, "temperature"_a);
  m.def("driven_qubit_ensemble", &driven_ensemble, "omega"_a = 1.0, "epsilon"_a = 0.1, "gamma0"_a = 0.05,
        "n_bar"_a = 0.5, "t_final"_a = 100.0, "dt"_a = 0.01, "GKSL solution with F_Q, F_IC, F_C, L, J on the grid");
  m.def("driven_qubit_trajectory", &driven_trajectory, "omega"_a = 1.0, "epsilon"_a = 0.1, "gamma0"_a = 0.05,
        "n_bar"_a = 0.5, "t_final"_a = 100.0, "dt"_a = 0.01, "seed"_a = 20260416, "index"_a = 0,
        "one quantum-jump trajectory with its CQFI terms and stochastic length/action");
  m.def("thermal_sensor", &thermal_sensor, "delta"_a = 1.0, "theta"_a = 1.0, "beta"_a = 1.0,
        "closed forms and generic-pipeline values for the thermal field sensor");
  m.def(
      "gaussian_qfi",
      [](const Eigen::Vector2d& mean, const Eigen::Matrix2d& cov, double t) {
        return gaussian_qfi(gaussian_state(mean, cov), t);
      },
      "mean"_a, "cov"_a, "t"_a);
  m.def(
      "gaussian_cqfi",
      [](const Eigen::Vector2d& mean, const Eigen::Matrix2d& cov, double t, double k_dt, double alpha) {
        return gaussian_cqfi(gaussian_state(mean, cov), t, k_dt, alpha);
      },
      "mean"_a, "cov"_a, "t"_a, "k_dt"_a, "alpha"_a);
  m.def("cumulative_length", &cumulative_length, "f"_a, "dt"_a);
  m.def("cumulative_action", &cumulative_action, "f"_a, "dt"_a);
  m.def(
      "validate_config", [](const std::string& path) { return validate_config(path).to_json().dump(); }, "path"_a,
      "canonical JSON echo with defaults filled in");
  m.def("run", &run, "config"_a, "seed"_a = py::none(), "n_trajs"_a = py::none(), "out"_a = py::none());
}
