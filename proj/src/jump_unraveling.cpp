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

#include "cqfi/jump_unraveling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cqfi {

std::size_t sample_eigenindex(const SpectralState& rho0, double u) {
  const auto n = rho0.eigenvalues.size();
  double acc = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    acc += std::max(0.0, rho0.eigenvalues(k));
    if (u < acc) return static_cast<std::size_t>(k);
  }
  // u landed in the rounding sliver above the cumulative sum: last populated level.
  for (Eigen::Index k = n - 1; k > 0; --k) {
    if (rho0.eigenvalues(k) > 0.0) return static_cast<std::size_t>(k);
  }
  return 0;
}

std::pair<std::size_t, PureState> sample_initial(const SpectralState& rho0, PhiloxStream& rng) {
  const std::size_t n0 = sample_eigenindex(rho0, rng.uniform());
  return {n0, PureState::normalized(rho0.eigenvectors.col(static_cast<Eigen::Index>(n0)))};
}

JumpPropagator::JumpPropagator(const GKSLModel& model, double dt)
    : model_(&model),
      dt_(dt),
      half_decay_(0.5 * model.decay_operator()),
      lpsi_(static_cast<Eigen::Index>(model.dim())),
      hpsi_(static_cast<Eigen::Index>(model.dim())),
      hhpsi_(static_cast<Eigen::Index>(model.dim())) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  if (model.time_independent()) heff_ = model.hamiltonian(0.0) - cplx(0.0, 1.0) * half_decay_;
}

int JumpPropagator::step(Vector& psi, double t, double u) {
  const auto& jumps = model_->jumps();
  double total = 0.0;
  for (const auto& ch : jumps) {
    lpsi_.noalias() = ch.op * psi;
    total += lpsi_.squaredNorm() * dt_;
  }
  if (total > kMaxJumpProbability) {
    throw Error(ErrorCode::kStepTooLarge, "jump probability " + std::to_string(total) + " in one step");
  }
  if (u < total) {
    double acc = 0.0;
    for (std::size_t k = 0; k < jumps.size(); ++k) {
      lpsi_.noalias() = jumps[k].op * psi;
      const double w = lpsi_.squaredNorm();
      acc += w * dt_;
      if (u < acc || k + 1 == jumps.size()) {
        const double norm = std::sqrt(w);
        if (norm < kMinNorm) throw Error(ErrorCode::kNormCollapse, "jump branch norm " + std::to_string(norm));
        psi = lpsi_ / norm;
        return static_cast<int>(k);
      }
    }
  }
  if (!model_->time_independent()) {
    heff_ = model_->hamiltonian(t + 0.5 * dt_) - cplx(0.0, 1.0) * half_decay_;
  }
  hpsi_.noalias() = heff_ * psi;
  hhpsi_.noalias() = heff_ * hpsi_;
  psi += cplx(0.0, -dt_) * hpsi_ - (0.5 * dt_ * dt_) * hhpsi_;
  const double norm = psi.norm();
  if (norm < kMinNorm) throw Error(ErrorCode::kNormCollapse, "no-jump norm " + std::to_string(norm));
  psi /= norm;
  return -1;
}

std::pair<PureState, std::optional<std::size_t>> jump_step(const PureState& psi, double t, double dt,
                                                           const GKSLModel& model, PhiloxStream& rng) {
  if (psi.dim() != model.dim()) throw Error(ErrorCode::kDimensionMismatch, "state and model dimensions differ");
  JumpPropagator prop(model, dt);
  Vector v = psi.amplitudes();
  const int ch = prop.step(v, t, rng.uniform());
  std::optional<std::size_t> event;
  if (ch >= 0) event = static_cast<std::size_t>(ch);
  return {PureState::normalized(v), event};
}

Trajectory simulate_trajectory(const GKSLModel& model, const SpectralState& rho0, const TimeGrid& grid,
                               std::uint64_t master_seed, std::uint64_t index) {
  if (rho0.dim() != model.dim()) throw Error(ErrorCode::kDimensionMismatch, "rho0 and model dimensions differ");
  JumpPropagator prop(model, grid.dt);
  Trajectory out;
  out.seed = master_seed;
  out.index = index;
  out.times = grid.times();
  out.states.reserve(grid.size());
  Vector psi(static_cast<Eigen::Index>(model.dim()));
  out.n0 = run_trajectory(prop, rho0, grid, master_seed, index, psi, [&](std::size_t i, const Vector& v, int ch) {
    out.states.push_back(PureState::normalized(v));
    if (ch >= 0) out.jumps.push_back({i, static_cast<std::size_t>(ch)});
  });
  return out;
}

std::vector<DensityMatrix> ensemble_average_state(std::span<const Trajectory> trajectories) {
  if (trajectories.empty()) throw Error(ErrorCode::kEmptySample, "no trajectories");
  const std::size_t points = trajectories.front().states.size();
  const auto dim = static_cast<Eigen::Index>(trajectories.front().states.front().dim());
  std::vector<DensityMatrix> out;
  out.reserve(points);
  const double inv_n = 1.0 / static_cast<double>(trajectories.size());
  for (std::size_t i = 0; i < points; ++i) {
    Matrix acc = Matrix::Zero(dim, dim);
    for (const auto& tr : trajectories) {
      if (tr.states.size() != points) throw Error(ErrorCode::kDimensionMismatch, "trajectories on different grids");
      const Vector& v = tr.states[i].amplitudes();
      acc.noalias() += v * v.adjoint();
    }
    acc *= inv_n;
    out.emplace_back(Matrix(0.5 * (acc + acc.adjoint())));
  }
  return out;
}

}  // namespace cqfi
