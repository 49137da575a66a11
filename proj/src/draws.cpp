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

#include "cqfi/draws.hpp"

namespace cqfi {

namespace {

Matrix ginibre(std::size_t dim, PhiloxStream& rng) {
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = standard_normal(rng);
      g(i, j) = cplx(re, standard_normal(rng));
    }
  }
  return g;
}

}  // namespace

DensityMatrix random_density_matrix(std::size_t dim, PhiloxStream& rng) {
  const Matrix g = ginibre(dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(Matrix(0.5 * (rho + rho.adjoint())));
}

HermitianOperator random_traceless_hermitian(std::size_t dim, PhiloxStream& rng) {
  const Matrix g = ginibre(dim, rng);
  Matrix h = 0.5 * (g + g.adjoint());
  h -= (h.trace() / static_cast<double>(dim)) * Matrix::Identity(h.rows(), h.cols());
  return HermitianOperator(Matrix(0.5 * (h + h.adjoint())));
}

PureState random_pure_state(std::size_t dim, PhiloxStream& rng) {
  Vector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = standard_normal(rng);
    v(i) = cplx(re, standard_normal(rng));
  }
  return PureState::normalized(v);
}

Matrix random_unitary(std::size_t dim, PhiloxStream& rng) {
  const Eigen::HouseholderQR<Matrix> qr(ginibre(dim, rng));
  return qr.householderQ() * Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

}  // namespace cqfi
