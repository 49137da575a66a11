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

// Conditional quantum Fisher information (CQFI): the SLD second moment
// conditioned on one measurement outcome, and its split into population
// (incoherent), basis-rotation (coherent) and interference (cross) parts.
//
// Two forms are provided and deliberately kept apart:
//   trace form   Tr(Pi L^2 rho) / Tr(Pi rho)    for any POVM element Pi
//   probe form   <a|L^2|a>                      for a pure probe |a>
// They coincide when [Pi, rho] = 0 and differ otherwise; the decomposition
// is attached to the probe form.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cqfi/operator_core.hpp"
#include "cqfi/sld_qfi.hpp"
#include "cqfi/statistics.hpp"

namespace cqfi {

inline constexpr double kOutcomeProbabilityFloor = 1e-12;
// |c_n|^2 allowed on an eigenstate whose population sits below the floor.
inline constexpr double kFlooredOverlapTol = 1e-6;

struct CqfiTerms {
  double total = 0.0;  // ||L a||^2, evaluated in the computational basis
  double ic = 0.0;
  double coh = 0.0;
  double cross = 0.0;
};

struct CqfiSample : CqfiTerms {
  Vector overlaps;            // c_n = <n|a>
  double outcome_prob = 0.0;  // <a|rho|a>
};

/// Per-(rho, drho) tables for evaluating many probes without allocation.
/// One kernel is shared read-only by all trajectories at a grid point; each
/// worker brings its own Workspace.
class CqfiKernel {
 public:
  struct Workspace {
    explicit Workspace(std::size_t dim);
    Vector c, b, lpsi, rpsi;
  };

  CqfiKernel(const SldData& sld, const DensityMatrix& rho);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(diag_.size()); }
  /// Fills ws.c with the eigenbasis overlaps. Throws kPopulationFloor when the
  /// probe has weight on an eigenstate below the population floor.
  CqfiTerms evaluate(const Vector& psi, Workspace& ws) const;
  /// Real part of <a|L^2 rho|a> / <a|rho|a>; the trace form for Pi = |a><a|.
  double trace_form(const Vector& psi, Workspace& ws) const;

 private:
  Matrix basis_adjoint_;  // U^dagger
  RealVector diag_;       // dp_n / p_n, zero below the floor
  Matrix coherent_;       // 2 (p_n - p_k) / (p_n + p_k) <k|dn>
  std::vector<bool> floored_;
  Matrix sld_;
  Matrix sld_sq_rho_;
  Matrix rho_;
};

/// Tr(Pi L^2 rho) / Tr(Pi rho) (real part). Pi must be positive semidefinite.
double cqfi_trace_form(const HermitianOperator& povm, const SldData& sld, const DensityMatrix& rho);

/// Probe form with the three-term decomposition.
CqfiSample cqfi_pure(const PureState& probe, const SldData& sld, const DensityMatrix& rho);

/// Classical score squared (Tr(Pi drho) / Tr(Pi rho))^2 for one outcome.
double stochastic_fisher(const HermitianOperator& povm, const DensityMatrix& rho, const HermitianOperator& drho);

struct WeightedCqfi {
  double probability = 0.0;
  CqfiSample sample;
};

/// sum_a p(a) f_a; the probabilities must sum to one within 1e-10.
double cqfi_average(std::span<const WeightedCqfi> samples);

/// Sample mean of the cross term with its standard error.
MeanWithError cross_term_ensemble_mean(std::span<const double> cross_samples);

}  // namespace cqfi
