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

#include "cqfi/sld_qfi.hpp"

#include <cmath>
#include <string>

namespace cqfi {

namespace {

// Rotate each degenerate block of `spec` so that drho is diagonal inside it.
void adapt_degenerate_blocks(SpectralState& spec, const Matrix& drho) {
  const auto n = static_cast<Eigen::Index>(spec.dim());
  for (Eigen::Index begin = 0; begin < n;) {
    Eigen::Index end = begin + 1;
    while (end < n && spec.eigenvalues(end - 1) - spec.eigenvalues(end) < kDegeneracyTol) ++end;
    const Eigen::Index size = end - begin;
    if (size > 1) {
      const Matrix block_vecs = spec.eigenvectors.middleCols(begin, size);
      const Matrix g = block_vecs.adjoint() * drho * block_vecs;
      const SpectralState inner = eig_hermitian(HermitianOperator(Matrix(0.5 * (g + g.adjoint()))));
      Matrix rotated = block_vecs * inner.eigenvectors;
      fix_gauge(rotated);
      spec.eigenvectors.middleCols(begin, size) = rotated;
    }
    begin = end;
  }
}

}  // namespace

SldData solve_sld(const DensityMatrix& rho, const HermitianOperator& drho) {
  require_same_dim(rho.matrix(), drho.matrix(), "solve_sld");
  const double tr = std::abs(drho.matrix().trace());
  if (tr > 1e-10) {
    throw Error(ErrorCode::kNonTracelessDerivative, "|Tr drho| = " + std::to_string(tr));
  }

  SldData out;
  out.spectral = rho.spectral();
  adapt_degenerate_blocks(out.spectral, drho.matrix());

  const auto n = static_cast<Eigen::Index>(rho.dim());
  const RealVector& p = out.spectral.eigenvalues;
  const Matrix& u = out.spectral.eigenvectors;
  const Matrix g = u.adjoint() * drho.matrix() * u;

  out.dp.resize(n);
  out.rotation = Matrix::Zero(n, n);
  out.sigma = RealMatrix::Zero(n, n);
  out.sld_eigenbasis = Matrix::Zero(n, n);

  for (Eigen::Index k = 0; k < n; ++k) {
    out.dp(k) = g(k, k).real();
    if (p(k) >= kPopulationFloor) {
      out.sld_eigenbasis(k, k) = out.dp(k) / p(k);
    } else if (std::abs(out.dp(k)) > kPopulationFloor) {
      out.rank_deficient = true;
    }
    for (Eigen::Index m = 0; m < n; ++m) {
      if (m == k) continue;
      const double sum = p(k) + p(m);
      if (sum >= kPopulationFloor) {
        out.sld_eigenbasis(k, m) = 2.0 * g(k, m) / sum;
        out.sigma(k, m) = (p(k) - p(m)) * (p(k) - p(m)) / sum;
      }
      if (out.spectral.degenerate(static_cast<std::size_t>(k), static_cast<std::size_t>(m))) {
        if (k < m) ++out.degenerate_pairs;
      } else {
        out.rotation(k, m) = g(k, m) / (p(m) - p(k));
      }
    }
  }

  const Matrix l = u * out.sld_eigenbasis * u.adjoint();
  out.sld = HermitianOperator(Matrix(0.5 * (l + l.adjoint())));
  out.lyapunov_residual =
      (drho.matrix() - 0.5 * (out.sld.matrix() * rho.matrix() + rho.matrix() * out.sld.matrix())).norm();
  return out;
}

double qfi(const SldData& sld, const DensityMatrix& rho) {
  require_same_dim(sld.sld.matrix(), rho.matrix(), "qfi");
  const Matrix& l = sld.sld.matrix();
  return std::max(0.0, (rho.matrix() * l * l).trace().real());
}

QfiSplit qfi_decompose(const SldData& sld) {
  QfiSplit out;
  const RealVector& p = sld.spectral.eigenvalues;
  const auto n = p.size();
  for (Eigen::Index x = 0; x < n; ++x) {
    if (p(x) >= kPopulationFloor) out.incoherent += sld.dp(x) * sld.dp(x) / p(x);
    for (Eigen::Index y = 0; y < n; ++y) {
      if (x != y) out.coherent += 2.0 * sld.sigma(x, y) * std::norm(sld.rotation(y, x));
    }
  }
  return out;
}

}  // namespace cqfi
