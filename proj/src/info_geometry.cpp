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

#include "cqfi/info_geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace cqfi {

std::vector<SldData> sld_series(const EnsembleSolution& sol) {
  std::vector<SldData> out;
  out.reserve(sol.states.size());
  for (std::size_t i = 0; i < sol.states.size(); ++i) out.push_back(solve_sld(sol.states[i], sol.derivatives[i]));
  return out;
}

double fisher_time(const EnsembleSolution& sol, std::size_t i) {
  if (i >= sol.states.size()) throw Error(ErrorCode::kInvalidArgument, "grid index out of range");
  return qfi(solve_sld(sol.states[i], sol.derivatives[i]), sol.states[i]);
}

FisherSeries fisher_time_series(const EnsembleSolution& sol, std::span<const SldData> slds) {
  if (slds.size() != sol.states.size()) throw Error(ErrorCode::kDimensionMismatch, "SLD series length");
  FisherSeries out;
  out.f_q.reserve(slds.size());
  out.f_ic.reserve(slds.size());
  out.f_c.reserve(slds.size());
  for (std::size_t i = 0; i < slds.size(); ++i) {
    out.f_q.push_back(qfi(slds[i], sol.states[i]));
    const QfiSplit split = qfi_decompose(slds[i]);
    out.f_ic.push_back(split.incoherent);
    out.f_c.push_back(split.coherent);
  }
  return out;
}

std::vector<double> cumulative_length(std::span<const double> f, double dt) {
  RunningGeometry g(dt);
  std::vector<double> out;
  out.reserve(f.size());
  for (double x : f) {
    g.push(x);
    out.push_back(g.length());
  }
  return out;
}

std::vector<double> cumulative_action(std::span<const double> f, double dt) {
  RunningGeometry g(dt);
  std::vector<double> out;
  out.reserve(f.size());
  for (double x : f) {
    g.push(x);
    out.push_back(g.action());
  }
  return out;
}

DeltaResult delta_from(double length, double action, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::kInvalidArgument, "delta needs t > 0");
  DeltaResult r;
  r.delta = 4.0 * (action - length * length) / (t * t);
  r.i_bar = 4.0 * action / (t * t);
  if (r.delta > 1e-9) {
    r.ratio_defined = true;
    r.ratio = r.i_bar / r.delta;
  }
  return r;
}

namespace {

void tally(SpeedLimitLedger& led, double slack) {
  led.worst_point_margin = std::numeric_limits<double>::infinity();
  led.worst_integral_margin = std::numeric_limits<double>::infinity();
  for (const auto& r : led.rows) {
    led.max_abs_rate = std::max(led.max_abs_rate, std::abs(r.rate));
    if (r.excluded) {
      ++led.excluded;
    } else {
      led.worst_point_margin = std::min(led.worst_point_margin, r.rhs_point - r.lhs_point);
      if (r.lhs_point > r.rhs_point + slack) ++led.point_violations;
    }
    led.worst_integral_margin = std::min(led.worst_integral_margin, r.rhs_integral - r.lhs_integral);
    if (r.lhs_integral > r.rhs_integral + slack) ++led.integral_violations;
  }
}

// Fills the integral columns from the pointwise ones.
void integrate_rows(std::vector<SpeedLimitRow>& rows, std::span<const double> f, double dt) {
  RunningGeometry g(dt);
  double lhs = 0.0, prev = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    g.push(f[i]);
    const double cur = rows[i].excluded ? 0.0 : rows[i].lhs_point;
    if (i > 0) lhs += 0.5 * dt * (cur + prev);
    prev = cur;
    rows[i].lhs_integral = lhs;
    rows[i].rhs_integral = 2.0 * g.length();
  }
}

}  // namespace

SpeedLimitLedger observable_speed_limit(const EnsembleSolution& sol, std::span<const double> f_q,
                                        const HermitianOperator& o, double slack) {
  if (f_q.size() != sol.states.size()) throw Error(ErrorCode::kDimensionMismatch, "Fisher series length");
  SpeedLimitLedger led;
  led.rows.resize(sol.states.size());
  for (std::size_t i = 0; i < sol.states.size(); ++i) {
    auto& r = led.rows[i];
    r.t = sol.times[i];
    r.rate = (o.matrix() * sol.derivatives[i].matrix()).trace().real();
    r.spread = std::sqrt(variance(o, sol.states[i]));
    r.rhs_point = std::sqrt(std::max(0.0, f_q[i]));
    r.excluded = !(r.spread * r.spread > kVarianceFloor);
    r.lhs_point = r.excluded ? 0.0 : std::abs(r.rate) / r.spread;
  }
  integrate_rows(led.rows, f_q, sol.grid.dt);
  tally(led, slack);
  return led;
}

TrajectoryRate::TrajectoryRate(const GKSLModel& model, const HermitianOperator& o)
    : model_(&model),
      o_(o.matrix()),
      o_sq_(o.matrix() * o.matrix()),
      half_decay_(0.5 * model.decay_operator()),
      w_(static_cast<Eigen::Index>(model.dim())) {
  require_same_dim(o_, half_decay_, "TrajectoryRate");
  if (model.time_independent()) heff_ = o_ * (model.hamiltonian(0.0) - cplx(0.0, 1.0) * half_decay_);
}

TrajectoryRate::Value TrajectoryRate::evaluate(const Vector& psi, double t) {
  if (!model_->time_independent()) heff_ = o_ * (model_->hamiltonian(t) - cplx(0.0, 1.0) * half_decay_);
  // heff_ holds O H_eff.
  w_.noalias() = heff_ * psi;
  const double im = psi.dot(w_).imag();
  w_.noalias() = half_decay_ * psi;
  const double gamma = 2.0 * psi.dot(w_).real();
  w_.noalias() = o_ * psi;
  const double mean = psi.dot(w_).real();
  w_.noalias() = o_sq_ * psi;
  const double var = psi.dot(w_).real() - mean * mean;
  return {2.0 * im + gamma * mean, mean, std::sqrt(std::max(0.0, var))};
}

SpeedLimitLedger observable_speed_limit(const Trajectory& traj, const GKSLModel& model, std::span<const double> f_traj,
                                        const HermitianOperator& o, double slack) {
  if (f_traj.size() != traj.states.size()) throw Error(ErrorCode::kDimensionMismatch, "CQFI series length");
  if (traj.times.size() < 2) throw Error(ErrorCode::kInvalidArgument, "trajectory needs two grid points");
  TrajectoryRate rate(model, o);
  SpeedLimitLedger led;
  led.rows.resize(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    auto& r = led.rows[i];
    const auto v = rate.evaluate(traj.states[i].amplitudes(), traj.times[i]);
    r.t = traj.times[i];
    r.rate = v.rate;
    r.spread = v.spread;
    r.rhs_point = std::sqrt(std::max(0.0, f_traj[i]));
    r.excluded = !(r.spread * r.spread > kVarianceFloor);
    r.lhs_point = r.excluded ? 0.0 : std::abs(r.rate) / r.spread;
  }
  integrate_rows(led.rows, f_traj, traj.times[1] - traj.times[0]);
  tally(led, slack);
  return led;
}

std::vector<CqfiTerms> trajectory_cqfi(const Trajectory& traj, const EnsembleSolution& sol,
                                       std::span<const SldData> slds) {
  if (traj.states.size() != sol.states.size() || slds.size() != sol.states.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "trajectory and ensemble grids differ");
  }
  std::vector<CqfiTerms> out;
  out.reserve(traj.states.size());
  CqfiKernel::Workspace ws(sol.states.front().dim());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const CqfiKernel kernel(slds[i], sol.states[i]);
    out.push_back(kernel.evaluate(traj.states[i].amplitudes(), ws));
  }
  return out;
}

HierarchyReport hierarchy_check(double action, double length, std::span<const double> ell_final,
                                std::span<const double> j_final) {
  if (ell_final.size() < 100 || j_final.size() < 100) {
    throw Error(ErrorCode::kInsufficientSample,
                "hierarchy check needs at least 100 trajectories, got " + std::to_string(ell_final.size()));
  }
  HierarchyReport r;
  r.action = action;
  r.length_sq = length * length;
  r.var_ell = variance_with_error(ell_final);
  r.mean_j = mean_with_error(j_final);
  r.mean_ell = mean_with_error(ell_final);
  r.j_relative_gap = action > 0.0 ? std::abs(r.mean_j.mean - action) / action : std::abs(r.mean_j.mean);
  r.action_ge_length_sq = action >= r.length_sq - 1e-9 * std::max(1.0, action);
  r.length_sq_ge_var = r.length_sq >= r.var_ell.variance - 3.0 * r.var_ell.se - 1e-12;
  return r;
}

}  // namespace cqfi
