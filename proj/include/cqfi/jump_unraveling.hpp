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

// First-order quantum-jump (MCWF) unraveling on the fixed ensemble grid.
//
// Per step one uniform u is drawn. With dp_k = ||L_k psi||^2 dt stacked as
// [0, dp_0), [dp_0, dp_0 + dp_1), ... a draw inside interval k applies
// L_k psi / ||L_k psi||; otherwise psi takes a second-order step under
// H_eff = H(t + dt/2) - (i/2) sum_k L_k^dagger L_k and is renormalized.
// The very first draw of a trajectory picks the initial eigenstate of rho0.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cqfi/lindblad.hpp"
#include "cqfi/operator_core.hpp"
#include "cqfi/random.hpp"

namespace cqfi {

inline constexpr double kMaxJumpProbability = 0.1;
inline constexpr double kMinNorm = 1e-6;

/// Index drawn from the eigenvalue law of rho0 using one uniform.
std::size_t sample_eigenindex(const SpectralState& rho0, double u);
std::pair<std::size_t, PureState> sample_initial(const SpectralState& rho0, PhiloxStream& rng);

/// Allocation-free stepper; one instance per worker.
class JumpPropagator {
 public:
  JumpPropagator(const GKSLModel& model, double dt);

  /// Advances psi over [t, t + dt] in place using the uniform u. Returns the
  /// channel index of a jump, or -1 for the no-jump branch.
  int step(Vector& psi, double t, double u);

  double dt() const noexcept { return dt_; }
  const GKSLModel& model() const noexcept { return *model_; }

 private:
  const GKSLModel* model_;
  double dt_;
  Matrix heff_;
  Matrix half_decay_;
  Vector lpsi_, hpsi_, hhpsi_;
};

/// One step from a fresh draw. Returns the new state and the jump channel.
std::pair<PureState, std::optional<std::size_t>> jump_step(const PureState& psi, double t, double dt,
                                                           const GKSLModel& model, PhiloxStream& rng);

struct JumpRecord {
  std::size_t step = 0;  // state index right after the jump
  std::size_t channel = 0;
};

struct Trajectory {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::vector<double> times;
  std::vector<PureState> states;
  std::vector<JumpRecord> jumps;
  std::size_t n0 = 0;
};

/// Drives one trajectory and calls visit(i, psi, channel) at every grid
/// point i (channel = -1 unless a jump landed on that step; i = 0 reports
/// -1). `psi` is scratch owned by the caller.
template <class Visitor>
std::size_t run_trajectory(JumpPropagator& prop, const SpectralState& rho0, const TimeGrid& grid,
                           std::uint64_t master_seed, std::uint64_t index, Vector& psi, Visitor&& visit) {
  PhiloxStream rng(master_seed, index);
  const std::size_t n0 = sample_eigenindex(rho0, rng.uniform());
  psi = rho0.eigenvectors.col(static_cast<Eigen::Index>(n0));
  visit(std::size_t{0}, static_cast<const Vector&>(psi), -1);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const int ch = prop.step(psi, grid.time(i - 1), rng.uniform());
    visit(i, static_cast<const Vector&>(psi), ch);
  }
  return n0;
}

Trajectory simulate_trajectory(const GKSLModel& model, const SpectralState& rho0, const TimeGrid& grid,
                               std::uint64_t master_seed, std::uint64_t index);

/// E[|psi><psi|] per grid point; throws kEmptySample for an empty set.
std::vector<DensityMatrix> ensemble_average_state(std::span<const Trajectory> trajectories);

}  // namespace cqfi
