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

// Closed-form oracle experiments (thermal field sensor, Gaussian force
// sensor) and the random-draw audit of the stochastic Fisher bound.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cqfi/conditional.hpp"
#include "cqfi/draws.hpp"
#include "cqfi/random.hpp"
#include "cqfi/sld_qfi.hpp"
#include "experiment_internal.hpp"

namespace cqfi::detail {

using nlohmann::ordered_json;

namespace {

// Streams reserved for oracle draws, far from the trajectory indices.
constexpr std::uint64_t kOracleStream = 0x8000000000000000ull;

double uniform_in(PhiloxStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

double scaled_error(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

CheckResult stochastic_fisher_audit(std::uint64_t master_seed, std::size_t draws, ordered_json& info) {
  PhiloxStream rng(master_seed, kOracleStream);
  std::size_t probe_violations = 0, closure_violations = 0, trace_violations = 0, sandwich_violations = 0;
  double worst_probe_ratio = 0.0, worst_closure = 0.0, min_cross = std::numeric_limits<double>::infinity();
  double worst_sandwich_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < draws; ++k) {
    const std::size_t dim = 2 + k % 2;
    const DensityMatrix rho = random_density_matrix(dim, rng);
    const HermitianOperator drho = random_traceless_hermitian(dim, rng);
    const PureState alpha = random_pure_state(dim, rng);
    const SldData sld = solve_sld(rho, drho);
    const CqfiSample s = cqfi_pure(alpha, sld, rho);
    const HermitianOperator povm(alpha.projector());
    const double sfi = stochastic_fisher(povm, rho, drho);
    const double scale = std::max(1.0, s.total);

    if (sfi > s.total + 1e-9 * scale) ++probe_violations;
    worst_probe_ratio = std::max(worst_probe_ratio, sfi / std::max(s.total, 1e-300));
    const double closure = std::abs(s.total - (s.ic + s.coh + s.cross)) / scale;
    worst_closure = std::max(worst_closure, closure);
    if (closure > 1e-9) ++closure_violations;
    min_cross = std::min(min_cross, s.cross);

    // The other two conditional forms, for the record.
    const double trace = cqfi_trace_form(povm, sld, rho);
    if (sfi > trace + 1e-9 * std::max(1.0, std::abs(trace))) ++trace_violations;
    const Matrix& l = sld.sld.matrix();
    const double sandwich = (povm.matrix() * l * rho.matrix() * l).trace().real() / s.outcome_prob;
    worst_sandwich_margin = std::min(worst_sandwich_margin, (sandwich - sfi) / std::max(1.0, sandwich));
    if (sfi > sandwich + 1e-9 * std::max(1.0, sandwich)) ++sandwich_violations;
  }
  const double frac = static_cast<double>(probe_violations) / static_cast<double>(draws);
  auto chk = make_check(9, "stochastic_fisher_bound", probe_violations == 0 && closure_violations == 0, frac, 0.0,
                        -frac, 0.0,
                        "fraction of draws with SFI > <a|L^2|a> (slack 1e-9); closure total = ic + coh + cross "
                        "within 1e-9 relative");
  chk.details = {{"draws", draws},
                 {"dimensions", {2, 3}},
                 {"probe_form_violations", probe_violations},
                 {"worst_sfi_over_probe_form", worst_probe_ratio},
                 {"closure_violations", closure_violations},
                 {"worst_closure_error", worst_closure},
                 {"min_cross", min_cross}};
  info["stochastic_fisher_other_forms"] = {
      {"trace_form_violations", trace_violations},
      {"sandwich_form_violations", sandwich_violations},
      {"worst_sandwich_margin", worst_sandwich_margin},
      {"note", "sandwich form is Tr(Pi L rho L) / Tr(Pi rho), the quantity Cauchy-Schwarz bounds the SFI by"}};
  return chk;
}

RunReport run_field_sensing(const ExperimentConfig& cfg) {
  const FieldSensingSettings& s = cfg.sensing;
  PhiloxStream rng(cfg.master_seed, kOracleStream + 1);
  double err_p = 0.0, err_ic = 0.0, err_c = 0.0, err_c_rot = 0.0, max_gap = 0.0;
  std::unique_ptr<CsvWriter> csv;
  if (cfg.write_csv) {
    csv = std::make_unique<CsvWriter>(
        std::filesystem::path(cfg.directory) / "sensor_oracle.csv",
        std::initializer_list<const char*>{"draw", "delta", "theta", "beta", "p_plus", "p_plus_num", "p_minus",
                                           "p_minus_num", "f_ic_plus", "f_ic_plus_num", "f_ic_minus",
                                           "f_ic_minus_num", "f_c", "f_c_rotation", "f_c_plus_num", "f_c_minus_num",
                                           "f_q_num", "richardson_gap"});
  }
  for (std::size_t k = 0; k < s.n_draws; ++k) {
    ThermalFieldSensorParams q = s.reference;
    if (k > 0) {
      q.delta = uniform_in(rng, 0.2, 2.0);
      q.theta = uniform_in(rng, -2.0, 2.0);
      q.beta = uniform_in(rng, 0.1, 5.0);
    }
    const ThermalSensorClosedForm cf = thermal_sensor_closed_forms(q);
    const ThermalSensorNumeric nm = thermal_sensor_numeric(q);
    err_p = std::max({err_p, scaled_error(nm.p_plus, cf.p_plus), scaled_error(nm.p_minus, cf.p_minus)});
    err_ic = std::max({err_ic, scaled_error(nm.f_ic_plus, cf.f_ic_plus), scaled_error(nm.f_ic_minus, cf.f_ic_minus)});
    err_c = std::max({err_c, scaled_error(nm.f_c_plus, cf.f_c), scaled_error(nm.f_c_minus, cf.f_c)});
    err_c_rot = std::max(
        {err_c_rot, scaled_error(nm.f_c_plus, cf.f_c_rotation), scaled_error(nm.f_c_minus, cf.f_c_rotation)});
    max_gap = std::max(max_gap, nm.richardson_gap);
    if (csv) {
      csv->row({static_cast<double>(k), q.delta, q.theta, q.beta, cf.p_plus, nm.p_plus, cf.p_minus, nm.p_minus,
                cf.f_ic_plus, nm.f_ic_plus, cf.f_ic_minus, nm.f_ic_minus, cf.f_c, cf.f_c_rotation, nm.f_c_plus,
                nm.f_c_minus, nm.f_q, nm.richardson_gap});
    }
  }

  // Limits that must hold exactly.
  ThermalFieldSensorParams no_field = s.reference;
  no_field.theta = 0.0;
  if (no_field.delta == 0.0) no_field.delta = 1.0;
  const ThermalSensorNumeric nf = thermal_sensor_numeric(no_field);
  const double ic_at_zero = std::max(std::abs(nf.f_ic_plus), std::abs(nf.f_ic_minus));
  ThermalFieldSensorParams hot = s.reference;
  hot.beta = 0.0;
  const ThermalSensorNumeric nh = thermal_sensor_numeric(hot);
  const double c_at_zero = std::max({std::abs(nh.f_c_plus), std::abs(nh.f_c_minus),
                                     std::abs(thermal_sensor_closed_forms(hot).f_c)});

  const double worst = std::max({err_p, err_ic, err_c});
  const bool limits_ok = ic_at_zero <= 1e-12 && c_at_zero <= 1e-12;
  RunReport report;
  auto chk = make_check(7, "thermal_sensor_closed_forms", worst <= 1e-6 && limits_ok, worst, 1e-6, 1e-6 - worst, 0.0,
                        "max scaled error of p_pm, f^IC_pm, f^C against the closed forms; theta = 0 => f^IC = 0 and "
                        "beta = 0 => f^C = 0 within 1e-12");
  chk.details = {{"draws", s.n_draws},
                 {"max_error_populations", err_p},
                 {"max_error_f_ic", err_ic},
                 {"max_error_f_c", err_c},
                 {"f_ic_at_theta_zero", ic_at_zero},
                 {"f_c_at_beta_zero", c_at_zero},
                 {"max_richardson_gap", max_gap}};
  report.checks.push_back(std::move(chk));
  report.informational["f_c_rotation_form"] = {
      {"max_error", err_c_rot},
      {"within_1e-6", err_c_rot <= 1e-6},
      {"note", "(Delta^2 / Omega^4) tanh^2(beta Omega / 2), from |<-|d+>| = Delta / (2 Omega^2)"}};
  return report;
}

RunReport run_gaussian_force(const ExperimentConfig& cfg) {
  const GaussianForceSettings& g = cfg.gaussian;
  PhiloxStream rng(cfg.master_seed, kOracleStream + 2);
  double worst_rel = 0.0;
  std::unique_ptr<CsvWriter> csv;
  if (cfg.write_csv) {
    csv = std::make_unique<CsvWriter>(std::filesystem::path(cfg.directory) / "gaussian_draws.csv",
                                      std::initializer_list<const char*>{"draw", "t", "mean_x", "mean_p", "V_x", "V_p",
                                                                         "V_xp", "alpha", "k_dt", "F_Q", "f_cqfi",
                                                                         "relative_error"});
  }
  for (std::size_t k = 0; k < g.n_draws; ++k) {
    const double r = uniform_in(rng, 0.0, 1.0);
    const double phi = uniform_in(rng, 0.0, std::numbers::pi);
    const double nu = uniform_in(rng, 1.0, 3.0);
    GaussianState st;
    const double c = std::cos(phi), sn = std::sin(phi);
    Eigen::Matrix2d rot;
    rot << c, -sn, sn, c;
    const Eigen::Vector2d sq(std::exp(2.0 * r), std::exp(-2.0 * r));
    st.cov = 0.5 * nu * rot * sq.asDiagonal() * rot.transpose();
    st.cov(0, 1) = st.cov(1, 0) = 0.5 * (st.cov(0, 1) + st.cov(1, 0));
    st.mean = {standard_normal(rng), standard_normal(rng)};
    st.validate();
    // First draw on the mean, second three standard deviations out, then random.
    const double u = k == 0 ? 0.0 : (k == 1 ? 1.0 : uniform_in(rng, -1.0, 1.0));
    const double alpha = st.mean(0) + 3.0 * u * std::sqrt(st.cov(0, 0));
    const double k_dt = std::pow(10.0, uniform_in(rng, -2.0, 2.0));
    const double t = uniform_in(rng, 0.1, 10.0);
    const double fq = gaussian_qfi(st, t);
    const double fc = gaussian_cqfi(st, t, k_dt, alpha);
    const double rel = std::abs(fc - fq) / fq;
    worst_rel = std::max(worst_rel, rel);
    if (csv) {
      csv->row({static_cast<double>(k), t, st.mean(0), st.mean(1), st.cov(0, 0), st.cov(1, 1), st.cov(0, 1), alpha,
                k_dt, fq, fc, rel});
    }
  }

  // t sweep on the configured state: log-log slope of the quadrature CQFI.
  const TimeGrid grid = TimeGrid::from_final_time(*cfg.t_final, *cfg.dt);
  const std::size_t max_points = 200;
  std::vector<std::size_t> idx;
  if (grid.steps <= max_points) {
    for (std::size_t i = 1; i <= grid.steps; ++i) idx.push_back(i);
  } else {
    const double lo = 0.0, hi = std::log(static_cast<double>(grid.steps));
    for (std::size_t m = 0; m < max_points; ++m) {
      const auto i = static_cast<std::size_t>(std::llround(std::exp(lo + (hi - lo) * m / (max_points - 1.0))));
      if (idx.empty() || i > idx.back()) idx.push_back(i);
    }
  }
  std::unique_ptr<CsvWriter> sweep;
  if (cfg.write_csv) {
    sweep = std::make_unique<CsvWriter>(std::filesystem::path(cfg.directory) / "gaussian_tsweep.csv",
                                        std::initializer_list<const char*>{"t", "F_Q", "f_cqfi", "mean_x_t", "mean_p_t",
                                                                           "V_x_t", "V_p_t", "V_xp_t"});
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  double sweep_rel = 0.0;
  for (std::size_t i : idx) {
    const double t = grid.time(i);
    const double fq = gaussian_qfi(g.initial, t);
    const double fc = gaussian_cqfi(g.initial, t, g.k_dt, g.initial.mean(0));
    sweep_rel = std::max(sweep_rel, std::abs(fc - fq) / fq);
    const double x = std::log(t), y = std::log(fc);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    if (sweep) {
      const GaussianState ev = gaussian_evolve_moments(g.initial, g.force, g.omega, t);
      sweep->row({t, fq, fc, ev.mean(0), ev.mean(1), ev.cov(0, 0), ev.cov(1, 1), ev.cov(0, 1)});
    }
  }
  const double m = static_cast<double>(idx.size());
  const double slope = idx.size() >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : std::numeric_limits<double>::quiet_NaN();
  const bool slope_ok = std::abs(slope - 2.0) <= 0.01;

  RunReport report;
  const double worst = std::max(worst_rel, sweep_rel);
  auto chk = make_check(8, "gaussian_outcome_independence", worst <= 1e-7 && slope_ok, worst, 1e-7, 1e-7 - worst, 0.0,
                        "max relative gap between quadrature CQFI and 4 t^2 V_x / det V; log-log slope 2.00 +- 0.01");
  chk.details = {{"draws", g.n_draws},
                 {"max_relative_error_draws", worst_rel},
                 {"max_relative_error_sweep", sweep_rel},
                 {"sweep_points", idx.size()},
                 {"log_log_slope", slope}};
  report.checks.push_back(std::move(chk));
  return report;
}

}  // namespace cqfi::detail
