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

// Dense operator algebra on small Hilbert spaces (dim <= 16) and the
// gauge-fixed Hermitian eigendecomposition the rest of the library builds on.
//
// Units: hbar = k_B = 1 throughout.

#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "cqfi/errors.hpp"

namespace cqfi {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kNormTol = 1e-10;
// Eigenvalues closer than this are treated as one degenerate level.
inline constexpr double kDegeneracyTol = 1e-9;

/// Throws kInvalidArgument unless `m` is square, non-empty and finite.
void require_square_finite(const Matrix& m, const char* what);
void require_same_dim(const Matrix& a, const Matrix& b, const char* what);

class HermitianOperator {
 public:
  /// Validates Hermiticity entrywise at kHermitianTol and stores the exactly
  /// symmetrized matrix (A + A^dagger) / 2.
  explicit HermitianOperator(const Matrix& m);

  static HermitianOperator zero(std::size_t dim);

  const Matrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

 private:
  Matrix m_;
};

/// Eigen-decomposition with eigenvalues in descending order and eigenvectors
/// (columns) phase-fixed so that the largest-magnitude component is real and
/// non-negative. Degenerate levels are ordered lexicographically on their
/// gauge-fixed components, so identical inputs give bitwise-identical output.
struct SpectralState {
  RealVector eigenvalues;
  Matrix eigenvectors;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
  bool degenerate(std::size_t i, std::size_t j) const {
    return std::abs(eigenvalues(i) - eigenvalues(j)) < kDegeneracyTol;
  }
  Matrix reconstruct() const;
};

class PureState {
 public:
  /// Requires unit norm within kNormTol.
  explicit PureState(const Vector& amplitudes);
  /// Normalizes; throws kNormCollapse when the norm is below `min_norm`.
  static PureState normalized(const Vector& v, double min_norm = 1e-6);
  static PureState basis(std::size_t dim, std::size_t index);

  const Vector& amplitudes() const noexcept { return psi_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(psi_.size()); }
  Matrix projector() const { return psi_ * psi_.adjoint(); }

 private:
  Vector psi_;
};

/// Unit-trace positive operator. The spectrum is computed once at
/// construction; eigenvalues in [-positivity_tol, 0) are clamped to zero.
class DensityMatrix {
 public:
  explicit DensityMatrix(const HermitianOperator& rho, double positivity_tol = kPositivityTol);
  explicit DensityMatrix(const Matrix& rho) : DensityMatrix(HermitianOperator(rho)) {}
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);
  /// Diagonal state with the given populations (must sum to one).
  static DensityMatrix diagonal(const RealVector& populations);

  const Matrix& matrix() const noexcept { return rho_.matrix(); }
  const HermitianOperator& op() const noexcept { return rho_; }
  const SpectralState& spectral() const noexcept { return spectral_; }
  std::size_t dim() const noexcept { return rho_.dim(); }
  double purity() const;

 private:
  HermitianOperator rho_;
  SpectralState spectral_;
};

SpectralState eig_hermitian(const HermitianOperator& a);

/// Applies the phase convention to each column of `vectors` in place.
void fix_gauge(Matrix& vectors);

/// Tr(A rho); the imaginary residue (<= 1e-12 for valid inputs) is discarded.
double expectation(const HermitianOperator& a, const DensityMatrix& rho);

/// Tr(rho O^2) - Tr(rho O)^2, clamped to zero above -1e-12.
double variance(const HermitianOperator& o, const DensityMatrix& rho);

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix anticommutator(const Matrix& a, const Matrix& b);

/// Trace norm distance 0.5 * ||a - b||_1 between Hermitian matrices.
double trace_distance(const Matrix& a, const Matrix& b);

namespace pauli {
// Basis convention: |0> = (1, 0) is the excited (sigma_z = +1) level and
// sigma_minus = |1><0| lowers it to |1>.
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
Matrix sigma_minus();
Matrix sigma_plus();
}  // namespace pauli

}  // namespace cqfi
