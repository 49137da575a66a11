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

// Symmetric logarithmic derivative (SLD) and the SLD quantum Fisher
// information, solved in the spectral basis of rho.
//
// With G = U^dagger drho U in the eigenbasis {|n>, p_n} of rho:
//
//   L_nn = G_nn / p_n                         (dropped when p_n < kPopulationFloor)
//   L_kn = 2 G_kn / (p_k + p_n),  k != n      (dropped when p_k + p_n < kPopulationFloor)
//   <k|dn> = G_kn / (p_n - p_k)                (zero for degenerate pairs)
//
// Inside a degenerate block the eigenbasis is rotated to diagonalize drho, so
// G_kn vanishes there and the rotation coefficients are consistently zero.

#pragma once

#include <cstddef>

#include "cqfi/operator_core.hpp"

namespace cqfi {

inline constexpr double kPopulationFloor = 1e-10;

struct SldData {
  HermitianOperator sld = HermitianOperator::zero(1);  // computational basis
  SpectralState spectral;                              // eigenbasis adapted to drho
  RealVector dp;                                       // d p_n
  Matrix rotation;                                     // rotation(k, n) = <k|dn>
  RealMatrix sigma;                                    // (p_x - p_y)^2 / (p_x + p_y)
  Matrix sld_eigenbasis;                               // U^dagger L U
  double lyapunov_residual = 0.0;                      // ||drho - {L, rho}/2||_F
  bool rank_deficient = false;
  std::size_t degenerate_pairs = 0;
};

/// Throws kNonTracelessDerivative when |Tr drho| > 1e-10.
SldData solve_sld(const DensityMatrix& rho, const HermitianOperator& drho);

/// Tr(rho L^2).
double qfi(const SldData& sld, const DensityMatrix& rho);

struct QfiSplit {
  double incoherent = 0.0;  // sum_x (dp_x)^2 / p_x
  double coherent = 0.0;    // 2 sum_{x != y} sigma_xy |<y|dx>|^2
};

QfiSplit qfi_decompose(const SldData& sld);

}  // namespace cqfi
