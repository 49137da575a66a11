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

// Fisher geometry with time as the parameter.
//
//   length  L(t) = 1/2 int_0^t sqrt(I) ds      action  J(t) = t/4 int_0^t I ds
//   delta        = 4 (J - L^2) / t^2           I_bar         = 4 J / t^2
//
// The same formulas with I -> f (a trajectory's CQFI profile) give the
// stochastic l(gamma, t), j(gamma, t). Integrals are trapezoidal on the
// shared grid; J >= L^2 then holds exactly for the discrete sums too.

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "cqfi/conditional.hpp"
#include "cqfi/jump_unraveling.hpp"
#include "cqfi/lindblad.hpp"
#include "cqfi/sld_qfi.hpp"
#include "cqfi/statistics.hpp"

namespace cqfi {

/// Observable-bound points whose variance sits below this are excluded.
inline constexpr double kVarianceFloor = 1e-10;
/// Fisher samples below -this are an error; those in (-this, 0) clamp to 0.
inline constexpr double kNegativeSampleTol = 1e-12;

/// SLD of rho_t with respect to t at every grid point (drho = gksl_rhs).
std::vector<SldData> sld_series(const EnsembleSolution& sol);
double fisher_time(const EnsembleSolution& sol, std::size_t i);

struct FisherSeries {
  std::vector<double> f_q, f_ic, f_c;
};
FisherSeries fisher_time_series(const EnsembleSolution& sol, std::span<const SldData> slds);

/// Streaming trapezoid integrals of sqrt(f) and f on a uniform grid.
class RunningGeometry {
 public:
  explicit RunningGeometry(double dt) : dt_(dt) {}

  void push(double f) {
    if (f < -kNegativeSampleTol) throw Error(ErrorCode::kNegativeSample, "negative Fisher sample");
    f = f > 0.0 ? f : 0.0;
    const double s = std::sqrt(f);
    if (count_ > 0) {
      int_sqrt_ += 0.5 * dt_ * (s + prev_sqrt_);
      int_f_ += 0.5 * dt_ * (f + prev_f_);
    }
    prev_f_ = f;
    prev_sqrt_ = s;
    ++count_;
  }
  double time() const noexcept { return count_ > 0 ? dt_ * static_cast<double>(count_ - 1) : 0.0; }
  double length() const noexcept { return 0.5 * int_sqrt_; }
  double action() const noexcept { return 0.25 * time() * int_f_; }

 private:
  double dt_;
  double int_sqrt_ = 0.0, int_f_ = 0.0;
  double prev_f_ = 0.0, prev_sqrt_ = 0.0;
  std::size_t count_ = 0;
};

/// Cumulative length and action at every grid point; throws kNegativeSample.
std::vector<double> cumulative_length(std::span<const double> f, double dt);
std::vector<double> cumulative_action(std::span<const double> f, double dt);

struct DeltaResult {
  double delta = 0.0;
  double i_bar = 0.0;
  bool ratio_defined = false;  // delta > 1e-9
  double ratio = 0.0;          // i_bar / delta when defined
};
DeltaResult delta_from(double length, double action, double t);

struct SpeedLimitRow {
  double t = 0.0;
  double rate = 0.0;    // d<O>/dt
  double spread = 0.0;  // Delta O
  double lhs_point = 0.0, rhs_point = 0.0;        // |rate|/spread vs sqrt(f)
  double lhs_integral = 0.0, rhs_integral = 0.0;  // int |rate|/spread vs 2 * length
  bool excluded = false;
};

struct SpeedLimitLedger {
  std::vector<SpeedLimitRow> rows;
  std::size_t excluded = 0;
  std::size_t point_violations = 0;
  std::size_t integral_violations = 0;
  double worst_point_margin = 0.0;     // min over audited points of rhs - lhs
  double worst_integral_margin = 0.0;
  double max_abs_rate = 0.0;
};

/// Ensemble bound with d<O>/dt = Tr(O drho/dt) and f = F_Q.
SpeedLimitLedger observable_speed_limit(const EnsembleSolution& sol, std::span<const double> f_q,
                                        const HermitianOperator& o, double slack = 1e-9);

/// d<O>/dt along the no-jump drift of a normalized trajectory state:
/// 2 Im <psi|O H_eff|psi> + <Gamma><O>, Gamma = sum_k L_k^dagger L_k.
class TrajectoryRate {
 public:
  TrajectoryRate(const GKSLModel& model, const HermitianOperator& o);
  struct Value {
    double rate, mean, spread;
  };
  Value evaluate(const Vector& psi, double t);

 private:
  const GKSLModel* model_;
  Matrix o_, o_sq_, heff_, half_decay_;
  Vector w_;
};

SpeedLimitLedger observable_speed_limit(const Trajectory& traj, const GKSLModel& model, std::span<const double> f_traj,
                                        const HermitianOperator& o, double slack = 1e-9);

/// Trajectory CQFI at every grid point against the ensemble eigenbasis.
std::vector<CqfiTerms> trajectory_cqfi(const Trajectory& traj, const EnsembleSolution& sol,
                                       std::span<const SldData> slds);

struct HierarchyReport {
  double action = 0.0;          // J
  double length_sq = 0.0;       // L^2
  VarianceWithError var_ell;    // Var(l) over trajectories
  MeanWithError mean_j;         // <j>
  MeanWithError mean_ell;       // <l>
  double j_relative_gap = 0.0;  // |<j> - J| / J
  bool action_ge_length_sq = false;
  bool length_sq_ge_var = false;  // within 3 sigma
};

/// Final-time hierarchy J >= L^2 >= Var(l); needs at least 100 trajectories.
HierarchyReport hierarchy_check(double action, double length, std::span<const double> ell_final,
                                std::span<const double> j_final);

}  // namespace cqfi
