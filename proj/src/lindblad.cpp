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

#include "cqfi/lindblad.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace cqfi {

namespace {

constexpr double kMaxStepRate = 0.1;
constexpr double kMaxGridSteps = 1e7;
constexpr double kStepTraceTol = 1e-10;
constexpr double kEvolvePositivityTol = 1e-8;

}  // namespace

GKSLModel::GKSLModel(const Matrix& hamiltonian, std::vector<JumpChannel> jumps,
                     std::vector<DetailedBalancePair> balance)
    : dim_(static_cast<std::size_t>(hamiltonian.rows())),
      static_h_(HermitianOperator(hamiltonian).matrix()),
      jumps_(std::move(jumps)),
      balance_(std::move(balance)) {
  validate();
}

GKSLModel::GKSLModel(std::size_t dim, HamiltonianFn hamiltonian, std::vector<JumpChannel> jumps,
                     std::vector<DetailedBalancePair> balance)
    : dim_(dim), h_fn_(std::move(hamiltonian)), jumps_(std::move(jumps)), balance_(std::move(balance)) {
  if (!h_fn_) throw Error(ErrorCode::kInvalidArgument, "GKSL model needs a Hamiltonian callback");
  validate();
}

void GKSLModel::validate() {
  if (dim_ == 0) throw Error(ErrorCode::kInvalidArgument, "GKSL model dimension must be positive");
  const auto n = static_cast<Eigen::Index>(dim_);
  decay_ = Matrix::Zero(n, n);
  for (const auto& ch : jumps_) {
    require_square_finite(ch.op, "jump operator");
    if (static_cast<std::size_t>(ch.op.rows()) != dim_) {
      throw Error(ErrorCode::kDimensionMismatch, "jump operator '" + ch.label + "' has wrong dimension");
    }
    decay_ += ch.op.adjoint() * ch.op;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(decay_, Eigen::EigenvaluesOnly);
  max_rate_ = std::max(0.0, solver.eigenvalues().maxCoeff());

  for (const auto& pair : balance_) {
    if (pair.emission >= jumps_.size() || pair.absorption >= jumps_.size()) {
      throw Error(ErrorCode::kInvalidArgument, "detailed-balance pair references a missing channel");
    }
    if (!(pair.rate_absorption > 0.0) || !(pair.rate_emission > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "detailed-balance rates must be positive");
    }
    const double log_ratio = std::log(pair.rate_emission / pair.rate_absorption);
    if (std::abs(log_ratio - pair.entropy_flow) > 1e-12 * std::max(1.0, std::abs(pair.entropy_flow))) {
      throw Error(ErrorCode::kInvalidArgument, "detailed balance violated: log rate ratio " +
                                                   std::to_string(log_ratio) + " != entropy flow " +
                                                   std::to_string(pair.entropy_flow));
    }
  }
}

Matrix GKSLModel::hamiltonian(double t) const {
  if (static_h_) return *static_h_;
  Matrix h = h_fn_(t);
  if (static_cast<std::size_t>(h.rows()) != dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "Hamiltonian callback returned wrong dimension");
  }
  return HermitianOperator(h).matrix();
}

Matrix GKSLModel::dissipator(const Matrix& rho) const {
  // Sum_k L rho L^dagger - 1/2 {L^dagger L, rho}; the anticommutator part is
  // collected through the precomputed decay operator.
  Matrix out = -0.5 * (decay_ * rho + rho * decay_);
  for (const auto& ch : jumps_) out.noalias() += ch.op * rho * ch.op.adjoint();
  return out;
}

Matrix GKSLModel::rhs(const Matrix& rho, double t) const {
  const Matrix h = hamiltonian(t);
  Matrix out = dissipator(rho);
  out.noalias() += cplx(0.0, -1.0) * (h * rho - rho * h);
  return out;
}

TimeGrid TimeGrid::from_final_time(double t_final, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw Error(ErrorCode::kInvalidArgument, "t_final must be non-negative");
  }
  const double ratio = t_final / dt;
  if (ratio > kMaxGridSteps) throw Error(ErrorCode::kInvalidArgument, "t_final / dt exceeds 1e7 steps");
  TimeGrid g;
  g.dt = dt;
  g.steps = static_cast<std::size_t>(std::llround(ratio));
  return g;
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = time(i);
  return out;
}

Matrix dissipator(const DensityMatrix& rho, const GKSLModel& model) {
  if (rho.dim() != model.dim()) throw Error(ErrorCode::kDimensionMismatch, "state and model dimensions differ");
  return model.dissipator(rho.matrix());
}

HermitianOperator gksl_rhs(const DensityMatrix& rho, double t, const GKSLModel& model) {
  if (rho.dim() != model.dim()) throw Error(ErrorCode::kDimensionMismatch, "state and model dimensions differ");
  return HermitianOperator(model.rhs(rho.matrix(), t));
}

EnsembleSolution evolve(const DensityMatrix& rho0, const GKSLModel& model, double t_final, double dt) {
  if (rho0.dim() != model.dim()) throw Error(ErrorCode::kDimensionMismatch, "state and model dimensions differ");
  const TimeGrid grid = TimeGrid::from_final_time(t_final, dt);
  if (dt * model.max_rate() > kMaxStepRate) {
    throw Error(ErrorCode::kStepTooLarge, "dt * max_rate = " + std::to_string(dt * model.max_rate()) + " > 0.1");
  }

  EnsembleSolution sol;
  sol.grid = grid;
  sol.times = grid.times();
  sol.states.reserve(grid.size());
  sol.derivatives.reserve(grid.size());

  Matrix rho = rho0.matrix();
  sol.states.push_back(rho0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.time(i);
    // The stored derivative is exactly the right-hand side at the stored state.
    sol.derivatives.emplace_back(model.rhs(sol.states.back().matrix(), t));
    if (i == grid.steps) break;

    const Matrix k1 = model.rhs(rho, t);
    const Matrix k2 = model.rhs(rho + 0.5 * dt * k1, t + 0.5 * dt);
    const Matrix k3 = model.rhs(rho + 0.5 * dt * k2, t + 0.5 * dt);
    const Matrix k4 = model.rhs(rho + dt * k3, t + dt);
    Matrix next = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    next = 0.5 * (next + next.adjoint());

    const double drift = std::abs(next.trace().real() - rho.trace().real());
    if (drift > kStepTraceTol) {
      throw Error(ErrorCode::kTraceDrift, "trace drift " + std::to_string(drift) + " at t = " + std::to_string(t));
    }
    try {
      sol.states.emplace_back(HermitianOperator(next), kEvolvePositivityTol);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInvalidState) {
        throw Error(ErrorCode::kPositivityLost, std::string(e.what()) + " at t = " + std::to_string(t + dt));
      }
      throw;
    }
    rho = std::move(next);
  }
  return sol;
}

}  // namespace cqfi
