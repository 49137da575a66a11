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

#include <doctest.h>

#include <cmath>

#include "cqfi/draws.hpp"
#include "cqfi/operator_core.hpp"
#include "cqfi/random.hpp"
#include "support/oracles.hpp"

namespace cqfi {
namespace {

namespace o = oracle;

TEST_CASE("eig_hermitian on sigma_z returns the computational basis") {
  const SpectralState s = eig_hermitian(HermitianOperator(pauli::z()));
  CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(-1.0));
  CHECK((s.eigenvectors - Matrix::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("eig_hermitian on I/2 returns an orthonormal gauge-fixed pair") {
  const SpectralState s = eig_hermitian(HermitianOperator(Matrix(0.5 * Matrix::Identity(2, 2))));
  CHECK(s.eigenvalues(0) == doctest::Approx(0.5));
  CHECK(s.eigenvalues(1) == doctest::Approx(0.5));
  CHECK(s.degenerate(0, 1));
  CHECK((s.eigenvectors.adjoint() * s.eigenvectors - Matrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("eig_hermitian matches the closed-form 2x2 spectrum") {
  const Matrix rho = (Matrix(2, 2) << 0.75, 0.25, 0.25, 0.25).finished();
  const SpectralState s = eig_hermitian(HermitianOperator(rho));
  // (1 +- sqrt(2)/2) / 2
  CHECK(std::abs(s.eigenvalues(0) - 0.85355339059327373) < 1e-14);
  CHECK(std::abs(s.eigenvalues(1) - 0.14644660940672624) < 1e-14);
  const auto [hi, lo] = o::eig2(rho);
  CHECK(std::abs(s.eigenvalues(0) - hi) < 1e-14);
  CHECK(std::abs(s.eigenvalues(1) - lo) < 1e-14);
  CHECK((s.reconstruct() - rho).norm() < 1e-10);
}

TEST_CASE("eig_hermitian reconstructs random qubit and qutrit operators") {
  PhiloxStream rng(7, 0);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t dim = 2 + static_cast<std::size_t>(k % 2);
    const DensityMatrix rho = random_density_matrix(dim, rng);
    const SpectralState s = eig_hermitian(rho.op());
    REQUIRE((s.reconstruct() - rho.matrix()).norm() <= 1e-10);
    REQUIRE((s.eigenvectors.adjoint() * s.eigenvectors - Matrix::Identity(s.eigenvectors.rows(), s.eigenvectors.cols()))
                .norm() <= 1e-10);
    REQUIRE(std::abs(s.eigenvalues.sum() - 1.0) <= 1e-10);
    for (Eigen::Index i = 1; i < s.eigenvalues.size(); ++i) REQUIRE(s.eigenvalues(i - 1) >= s.eigenvalues(i));
  }
}

TEST_CASE("gauge fixing makes the largest component real and non-negative, deterministically") {
  PhiloxStream rng(8, 0);
  for (int k = 0; k < 200; ++k) {
    const HermitianOperator a = random_traceless_hermitian(3, rng);
    const SpectralState s1 = eig_hermitian(a);
    const SpectralState s2 = eig_hermitian(a);
    REQUIRE(s1.eigenvectors == s2.eigenvectors);
    for (Eigen::Index c = 0; c < 3; ++c) {
      Eigen::Index pivot;
      s1.eigenvectors.col(c).cwiseAbs().maxCoeff(&pivot);
      REQUIRE(s1.eigenvectors(pivot, c).imag() == 0.0);
      REQUIRE(s1.eigenvectors(pivot, c).real() >= 0.0);
    }
    Matrix again = s1.eigenvectors;
    fix_gauge(again);
    REQUIRE(again == s1.eigenvectors);
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  Matrix m = pauli::x();
  m(0, 1) = cplx(1.0, 1e-6);
  CHECK_THROWS_AS(HermitianOperator{m}, Error);
  try {
    HermitianOperator{m};
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonHermitianInput);
  }
}

TEST_CASE("expectation values") {
  const HermitianOperator z(pauli::z()), x(pauli::x());
  CHECK(std::abs(expectation(z, DensityMatrix::maximally_mixed(2))) < 1e-15);
  CHECK(expectation(z, DensityMatrix::from_pure(PureState::basis(2, 0))) == doctest::Approx(1.0));
  const DensityMatrix rho(Matrix((Matrix(2, 2) << 0.5, 0.3, 0.3, 0.5).finished()));
  CHECK(std::abs(expectation(x, rho) - 0.6) < 1e-15);
  CHECK_THROWS_AS(expectation(z, DensityMatrix::maximally_mixed(3)), Error);
}

TEST_CASE("variance values") {
  const HermitianOperator z(pauli::z()), x(pauli::x());
  const DensityMatrix ground = DensityMatrix::from_pure(PureState::basis(2, 0));
  CHECK(std::abs(variance(z, ground)) < 1e-15);
  CHECK(variance(z, DensityMatrix::maximally_mixed(2)) == doctest::Approx(1.0));
  CHECK(variance(x, ground) == doctest::Approx(1.0));
}

TEST_CASE("variance vanishes exactly on eigenspace mixtures and is positive otherwise") {
  PhiloxStream rng(9, 0);
  const Matrix diag = (Matrix(3, 3) << 1, 0, 0, 0, 1, 0, 0, 0, -2).finished();
  const Matrix u = random_unitary(3, rng);
  const HermitianOperator o(Matrix(u * diag * u.adjoint()));
  for (int k = 0; k < 100; ++k) {
    const double w = rng.uniform();
    const Matrix in_space = u * (Matrix(3, 3) << w, 0, 0, 0, 1 - w, 0, 0, 0, 0).finished() * u.adjoint();
    REQUIRE(variance(o, DensityMatrix(Matrix(0.5 * (in_space + in_space.adjoint())))) < 1e-12);
    const DensityMatrix generic = random_density_matrix(3, rng);
    REQUIRE(variance(o, generic) > 1e-6);
  }
}

TEST_CASE("commutator and anticommutator of Pauli matrices") {
  CHECK((commutator(pauli::x(), pauli::y()) - cplx(0, 2) * pauli::z()).norm() < 1e-15);
  CHECK((anticommutator(pauli::x(), pauli::x()) - 2.0 * Matrix::Identity(2, 2)).norm() < 1e-15);
  CHECK(commutator(pauli::y(), pauli::y()).norm() == 0.0);
  CHECK_THROWS_AS(commutator(pauli::x(), Matrix::Identity(3, 3)), Error);
}

TEST_CASE("Pauli conventions: |0> is excited, sigma_minus lowers") {
  CHECK((pauli::sigma_minus() - o::sm()).norm() == 0.0);
  CHECK((pauli::sigma_minus() * PureState::basis(2, 0).amplitudes() - PureState::basis(2, 1).amplitudes()).norm() == 0.0);
  CHECK((pauli::sigma_plus() - o::sm().adjoint()).norm() == 0.0);
}

TEST_CASE("density matrix validation") {
  CHECK_THROWS_AS(DensityMatrix(Matrix(Matrix::Identity(2, 2))), Error);
  CHECK_THROWS_AS(DensityMatrix(Matrix((Matrix(2, 2) << 1.2, 0, 0, -0.2).finished())), Error);
  CHECK_THROWS_AS(PureState(Vector::Ones(2)), Error);
  CHECK(std::abs(trace_distance(pauli::z() * 0.5 + 0.5 * Matrix::Identity(2, 2), Matrix(0.5 * Matrix::Identity(2, 2))) -
                 0.5) < 1e-15);
}

}  // namespace
}  // namespace cqfi
