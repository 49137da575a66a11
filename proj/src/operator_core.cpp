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

#include "cqfi/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace cqfi {

namespace {

std::string dims(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// Lexicographic "greater" on gauge-fixed columns: real parts first, then
// imaginary parts, component by component.
bool column_greater(const Matrix& v, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const double ra = v(i, a).real(), rb = v(i, b).real();
    if (ra != rb) return ra > rb;
    const double ia = v(i, a).imag(), ib = v(i, b).imag();
    if (ia != ib) return ia > ib;
  }
  return false;
}

}  // namespace

void require_square_finite(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be square and non-empty, got " + dims(m));
  }
  if (!m.allFinite()) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " has non-finite entries");
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, std::string(what) + ": " + dims(a) + " vs " + dims(b));
  }
}

HermitianOperator::HermitianOperator(const Matrix& m) {
  require_square_finite(m, "Hermitian operator");
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol) {
    throw Error(ErrorCode::kNonHermitianInput, "max |A - A^dagger| entry = " + std::to_string(asym));
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianOperator(Matrix::Zero(n, n));
}

Matrix SpectralState::reconstruct() const {
  return eigenvectors * eigenvalues.cast<cplx>().asDiagonal() * eigenvectors.adjoint();
}

void fix_gauge(Matrix& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    auto col = vectors.col(c);
    const double max_mag = col.cwiseAbs().maxCoeff();
    if (max_mag == 0.0) continue;
    Eigen::Index pivot = 0;
    while (std::abs(col(pivot)) < max_mag - 1e-12) ++pivot;
    const cplx phase = std::conj(col(pivot)) / std::abs(col(pivot));
    col *= phase;
    col(pivot) = cplx(std::abs(col(pivot)), 0.0);
  }
}

SpectralState eig_hermitian(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  Matrix vecs = solver.eigenvectors();
  fix_gauge(vecs);
  const RealVector& vals = solver.eigenvalues();
  const auto n = vals.size();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return vals(i) > vals(j); });
  // Within each degenerate run, order by the gauge-fixed components.
  for (std::size_t begin = 0; begin < order.size();) {
    std::size_t end = begin + 1;
    while (end < order.size() && vals(order[end - 1]) - vals(order[end]) < kDegeneracyTol) ++end;
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(begin), order.begin() + static_cast<std::ptrdiff_t>(end),
              [&](Eigen::Index i, Eigen::Index j) { return column_greater(vecs, i, j); });
    begin = end;
  }

  SpectralState out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = vals(order[static_cast<std::size_t>(k)]);
    out.eigenvectors.col(k) = vecs.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

PureState::PureState(const Vector& amplitudes) : psi_(amplitudes) {
  if (psi_.size() == 0 || !psi_.allFinite()) throw Error(ErrorCode::kInvalidState, "pure state must be finite and non-empty");
  const double norm = psi_.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw Error(ErrorCode::kInvalidState, "pure state norm " + std::to_string(norm) + " differs from 1");
  }
}

PureState PureState::normalized(const Vector& v, double min_norm) {
  const double norm = v.norm();
  if (!(norm >= min_norm)) throw Error(ErrorCode::kNormCollapse, "state norm " + std::to_string(norm) + " below floor");
  return PureState(v / norm);
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorCode::kInvalidArgument, "basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(v);
}

DensityMatrix::DensityMatrix(const HermitianOperator& rho, double positivity_tol) : rho_(rho) {
  const double tr = rho_.matrix().trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw Error(ErrorCode::kInvalidState, "density matrix trace " + std::to_string(tr) + " differs from 1");
  }
  spectral_ = eig_hermitian(rho_);
  const double min_eig = spectral_.eigenvalues.minCoeff();
  if (min_eig < -positivity_tol) {
    throw Error(ErrorCode::kInvalidState, "density matrix eigenvalue " + std::to_string(min_eig) + " is negative");
  }
  spectral_.eigenvalues = spectral_.eigenvalues.cwiseMax(0.0);
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) { return DensityMatrix(psi.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return DensityMatrix(Matrix(Matrix::Identity(n, n) / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::diagonal(const RealVector& populations) {
  return DensityMatrix(Matrix(populations.cast<cplx>().asDiagonal()));
}

double DensityMatrix::purity() const { return (matrix() * matrix()).trace().real(); }

double expectation(const HermitianOperator& a, const DensityMatrix& rho) {
  require_same_dim(a.matrix(), rho.matrix(), "expectation");
  return (a.matrix() * rho.matrix()).trace().real();
}

double variance(const HermitianOperator& o, const DensityMatrix& rho) {
  require_same_dim(o.matrix(), rho.matrix(), "variance");
  const Matrix orho = o.matrix() * rho.matrix();
  const double mean = orho.trace().real();
  const double second = (o.matrix() * orho).trace().real();
  const double var = second - mean * mean;
  if (var < -1e-12) throw Error(ErrorCode::kNegativeVariance, "variance " + std::to_string(var));
  return std::max(var, 0.0);
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

Matrix anticommutator(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

double trace_distance(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "trace distance");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(Matrix(0.5 * ((a - b) + (a - b).adjoint())), Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

namespace pauli {

Matrix identity() { return Matrix::Identity(2, 2); }

Matrix x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix y() {
  Matrix m(2, 2);
  m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return m;
}

Matrix z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

Matrix sigma_plus() { return sigma_minus().adjoint(); }

}  // namespace pauli

}  // namespace cqfi
