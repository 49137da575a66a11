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

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cqfi/operator_core.hpp"

namespace cqfi {

struct JumpChannel {
  std::string label;
  Matrix op;  // already carries sqrt(rate)
};

/// Two channels related by time reversal: rate(emission) / rate(absorption)
/// must equal exp(entropy_flow).
struct DetailedBalancePair {
  std::size_t emission = 0;
  std::size_t absorption = 0;
  double rate_emission = 0.0;
  double rate_absorption = 0.0;
  double entropy_flow = 0.0;
};

class GKSLModel {
 public:
  using HamiltonianFn = std::function<Matrix(double)>;

  GKSLModel(const Matrix& hamiltonian, std::vector<JumpChannel> jumps,
            std::vector<DetailedBalancePair> balance = {});
  GKSLModel(std::size_t dim, HamiltonianFn hamiltonian, std::vector<JumpChannel> jumps,
            std::vector<DetailedBalancePair> balance = {});

  std::size_t dim() const noexcept { return dim_; }
  bool time_independent() const noexcept { return static_h_.has_value(); }
  Matrix hamiltonian(double t) const;
  const std::vector<JumpChannel>& jumps() const noexcept { return jumps_; }
  const std::vector<DetailedBalancePair>& balance() const noexcept { return balance_; }

  /// Sum_k L_k^dagger L_k.
  const Matrix& decay_operator() const noexcept { return decay_; }
  /// Largest eigenvalue of the decay operator: the fastest total jump rate
  /// any state can have.
  double max_rate() const noexcept { return max_rate_; }

  /// D[rho] and the full right-hand side -i[H, rho] + D[rho] on raw matrices.
  Matrix dissipator(const Matrix& rho) const;
  Matrix rhs(const Matrix& rho, double t) const;

 private:
  void validate();

  std::size_t dim_;
  std::optional<Matrix> static_h_;
  HamiltonianFn h_fn_;
  std::vector<JumpChannel> jumps_;
  std::vector<DetailedBalancePair> balance_;
  Matrix decay_;
  double max_rate_ = 0.0;
};

/// Uniform grid t_i = i * dt, i = 0..steps.
struct TimeGrid {
  double dt = 0.0;
  std::size_t steps = 0;

  static TimeGrid from_final_time(double t_final, double dt);
  std::size_t size() const noexcept { return steps + 1; }
  double time(std::size_t i) const noexcept { return static_cast<double>(i) * dt; }
  double final_time() const noexcept { return time(steps); }
  std::vector<double> times() const;
};

struct EnsembleSolution {
  TimeGrid grid;
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<HermitianOperator> derivatives;  // gksl_rhs at each grid point
};

Matrix dissipator(const DensityMatrix& rho, const GKSLModel& model);
HermitianOperator gksl_rhs(const DensityMatrix& rho, double t, const GKSLModel& model);

/// Fixed-step RK4. Requires dt * model.max_rate() <= 0.1; checks trace drift
/// (1e-10 per step) and positivity (1e-8) after every step.
EnsembleSolution evolve(const DensityMatrix& rho0, const GKSLModel& model, double t_final, double dt);

}  // namespace cqfi
