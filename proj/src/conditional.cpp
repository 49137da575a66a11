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

#include "cqfi/conditional.hpp"

#include <cmath>
#include <string>

namespace cqfi {

CqfiKernel::Workspace::Workspace(std::size_t dim)
    : c(static_cast<Eigen::Index>(dim)),
      b(static_cast<Eigen::Index>(dim)),
      lpsi(static_cast<Eigen::Index>(dim)),
      rpsi(static_cast<Eigen::Index>(dim)) {}

CqfiKernel::CqfiKernel(const SldData& sld, const DensityMatrix& rho)
    : basis_adjoint_(sld.spectral.eigenvectors.adjoint()),
      diag_(RealVector::Zero(sld.spectral.eigenvalues.size())),
      floored_(static_cast<std::size_t>(sld.spectral.eigenvalues.size()), false),
      sld_(sld.sld.matrix()),
      sld_sq_rho_(sld.sld.matrix() * sld.sld.matrix() * rho.matrix()),
      rho_(rho.matrix()) {
  require_same_dim(sld_, rho_, "CqfiKernel");
  const RealVector& p = sld.spectral.eigenvalues;
  const auto n = p.size();
  coherent_ = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (p(k) >= kPopulationFloor) {
      diag_(k) = sld.dp(k) / p(k);
    } else {
      floored_[static_cast<std::size_t>(k)] = true;
    }
    for (Eigen::Index m = 0; m < n; ++m) {
      const double sum = p(k) + p(m);
      if (m != k && sum >= kPopulationFloor) {
        coherent_(k, m) = 2.0 * (p(m) - p(k)) / sum * sld.rotation(k, m);
      }
    }
  }
}

CqfiTerms CqfiKernel::evaluate(const Vector& psi, Workspace& ws) const {
  ws.c.noalias() = basis_adjoint_ * psi;
  const auto n = ws.c.size();
  CqfiTerms t;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double w = std::norm(ws.c(k));
    if (floored_[static_cast<std::size_t>(k)] && w > kFlooredOverlapTol) {
      throw Error(ErrorCode::kPopulationFloor,
                  "probe weight " + std::to_string(w) + " on eigenstate " + std::to_string(k) + " below the population floor");
    }
    t.ic += diag_(k) * diag_(k) * w;
  }
  ws.b.noalias() = coherent_ * ws.c;
  t.coh = ws.b.squaredNorm();
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index m = 0; m < n; ++m) {
      if (m == k) continue;
      t.cross += (std::conj(ws.c(k)) * ws.c(m) * coherent_(k, m)).real() * (diag_(k) + diag_(m));
    }
  }
  ws.lpsi.noalias() = sld_ * psi;
  t.total = ws.lpsi.squaredNorm();
  return t;
}

double CqfiKernel::trace_form(const Vector& psi, Workspace& ws) const {
  ws.rpsi.noalias() = rho_ * psi;
  const double prob = psi.dot(ws.rpsi).real();
  if (!(prob > kOutcomeProbabilityFloor)) {
    throw Error(ErrorCode::kVanishingOutcomeProbability, "<a|rho|a> = " + std::to_string(prob));
  }
  ws.lpsi.noalias() = sld_sq_rho_ * psi;
  return psi.dot(ws.lpsi).real() / prob;
}

double cqfi_trace_form(const HermitianOperator& povm, const SldData& sld, const DensityMatrix& rho) {
  require_same_dim(povm.matrix(), rho.matrix(), "cqfi_trace_form");
  require_same_dim(sld.sld.matrix(), rho.matrix(), "cqfi_trace_form");
  if (eig_hermitian(povm).eigenvalues.minCoeff() < -kPositivityTol) {
    throw Error(ErrorCode::kInvalidPovm, "POVM element is not positive semidefinite");
  }
  const Matrix& l = sld.sld.matrix();
  const double prob = (povm.matrix() * rho.matrix()).trace().real();
  if (!(prob > kOutcomeProbabilityFloor)) {
    throw Error(ErrorCode::kVanishingOutcomeProbability, "Tr(Pi rho) = " + std::to_string(prob));
  }
  return (povm.matrix() * l * l * rho.matrix()).trace().real() / prob;
}

CqfiSample cqfi_pure(const PureState& probe, const SldData& sld, const DensityMatrix& rho) {
  if (probe.dim() != rho.dim()) throw Error(ErrorCode::kDimensionMismatch, "probe and state dimensions differ");
  const CqfiKernel kernel(sld, rho);
  CqfiKernel::Workspace ws(probe.dim());
  CqfiSample out;
  static_cast<CqfiTerms&>(out) = kernel.evaluate(probe.amplitudes(), ws);
  out.overlaps = ws.c;
  out.outcome_prob = probe.amplitudes().dot(rho.matrix() * probe.amplitudes()).real();
  return out;
}

double stochastic_fisher(const HermitianOperator& povm, const DensityMatrix& rho, const HermitianOperator& drho) {
  require_same_dim(povm.matrix(), rho.matrix(), "stochastic_fisher");
  require_same_dim(drho.matrix(), rho.matrix(), "stochastic_fisher");
  const double prob = (povm.matrix() * rho.matrix()).trace().real();
  if (!(prob > kOutcomeProbabilityFloor)) {
    throw Error(ErrorCode::kVanishingOutcomeProbability, "Tr(Pi rho) = " + std::to_string(prob));
  }
  const double score = (povm.matrix() * drho.matrix()).trace().real() / prob;
  return score * score;
}

double cqfi_average(std::span<const WeightedCqfi> samples) {
  if (samples.empty()) throw Error(ErrorCode::kEmptySample, "no CQFI samples");
  double total_prob = 0.0, acc = 0.0;
  for (const auto& s : samples) {
    total_prob += s.probability;
    acc += s.probability * s.sample.total;
  }
  if (std::abs(total_prob - 1.0) > 1e-10) {
    throw Error(ErrorCode::kIncompletePovm, "outcome probabilities sum to " + std::to_string(total_prob));
  }
  return acc;
}

MeanWithError cross_term_ensemble_mean(std::span<const double> cross_samples) {
  return mean_with_error(cross_samples);
}

}  // namespace cqfi
