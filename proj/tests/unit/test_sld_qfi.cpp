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
#include "cqfi/models.hpp"
#include "cqfi/random.hpp"
#include "cqfi/sld_qfi.hpp"
#include "support/oracles.hpp"

namespace cqfi {
namespace {

namespace o = oracle;

TEST_CASE("SLD of the diagonal family I/2 + theta sigma_z / 2 is sigma_z") {
  const DensityMatrix rho = DensityMatrix::maximally_mixed(2);
  const SldData s = solve_sld(rho, HermitianOperator(Matrix(0.5 * pauli::z())));
  CHECK((s.sld.matrix() - pauli::z()).norm() < 1e-14);
  CHECK(qfi(s, rho) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("SLD for diag(3/4, 1/4) with drho = sigma_x is 2 sigma_x") {
  const DensityMatrix rho = DensityMatrix::diagonal((RealVector(2) << 0.75, 0.25).finished());
  const SldData s = solve_sld(rho, HermitianOperator(pauli::x()));
  CHECK((s.sld.matrix() - 2.0 * pauli::x()).norm() < 1e-14);
  CHECK(s.lyapunov_residual < 1e-14);
  CHECK((s.sld.matrix() - o::lyapunov(rho.matrix(), pauli::x())).norm() < 1e-12);
}

TEST_CASE("null derivative gives zero SLD and zero QFI") {
  const DensityMatrix rho = DensityMatrix::diagonal((RealVector(2) << 0.6, 0.4).finished());
  const SldData s = solve_sld(rho, HermitianOperator::zero(2));
  CHECK(s.sld.matrix().norm() == 0.0);
  CHECK(qfi(s, rho) == 0.0);
}

TEST_CASE("pure phase family has unit QFI through the regularized solver") {
  const double theta = 0.37, h = 1e-5;
  auto state = [](double th) {
    Vector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const Matrix u = o::expm(Matrix(cplx(0, -th / 2.0) * pauli::z()));
    return Vector(u * plus);
  };
  const Vector psi = state(theta);
  const Vector dpsi = (state(theta + h) - state(theta - h)) / (2.0 * h);
  CHECK(std::abs(o::qfi_pure(psi, dpsi) - 1.0) < 1e-9);
  const Matrix drho = (state(theta + h) * state(theta + h).adjoint() - state(theta - h) * state(theta - h).adjoint()) /
                      (2.0 * h);
  const DensityMatrix rho = DensityMatrix::from_pure(PureState::normalized(psi));
  const SldData s = solve_sld(rho, HermitianOperator(Matrix(0.5 * (drho + drho.adjoint()))));
  CHECK(std::abs(qfi(s, rho) - 1.0) < 1e-9);
}

TEST_CASE("split: diagonal derivative has no coherent part, pure rotation has no incoherent part") {
  PhiloxStream rng(21, 0);
  const DensityMatrix rho = random_density_matrix(3, rng);
  const Matrix u = rho.spectral().eigenvectors;
  const Matrix diag_d = u * (Matrix(3, 3) << 0.1, 0, 0, 0, -0.04, 0, 0, 0, -0.06).finished() * u.adjoint();
  const QfiSplit a = qfi_decompose(solve_sld(rho, HermitianOperator(Matrix(0.5 * (diag_d + diag_d.adjoint())))));
  CHECK(std::abs(a.coherent) < 1e-14);
  CHECK(a.incoherent > 0.0);

  const HermitianOperator g = random_traceless_hermitian(3, rng);
  const Matrix rot = cplx(0, -1) * commutator(g.matrix(), rho.matrix());
  const QfiSplit b = qfi_decompose(solve_sld(rho, HermitianOperator(Matrix(0.5 * (rot + rot.adjoint())))));
  CHECK(std::abs(b.incoherent) < 1e-14);
  CHECK(b.coherent > 0.0);
}

TEST_CASE("thermal field sensor split at Delta = theta = beta = 1") {
  // Frozen from a 40-digit evaluation of exp(-beta H) / Z, H = (Delta sz + theta sx) / 2.
  const double f_ic = 0.078661284204356708, f_c = 0.092677431591286583;
  const ThermalFieldSensorParams p{1.0, 1.0, 1.0};
  const DensityMatrix rho = thermal_sensor_state(p);
  const SldData s = solve_sld(rho, thermal_sensor_derivative(p).drho);
  const QfiSplit split = qfi_decompose(s);
  CHECK(std::abs(split.incoherent - f_ic) < 1e-10);
  CHECK(std::abs(split.coherent - f_c) < 1e-10);
  // The coherent part is (Delta^2 / Omega^4) tanh^2(beta Omega / 2).
  CHECK(std::abs(f_c - 0.25 * std::pow(std::tanh(std::sqrt(0.5)), 2)) < 1e-15);
}

TEST_CASE("random full-rank pairs: Lyapunov residual, split closure, two-sum form") {
  PhiloxStream rng(22, 0);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t dim = 2 + static_cast<std::size_t>(k % 2);
    const DensityMatrix rho = random_density_matrix(dim, rng);
    const HermitianOperator d = random_traceless_hermitian(dim, rng);
    const SldData s = solve_sld(rho, d);
    REQUIRE(s.lyapunov_residual <= 1e-9);
    const double f = qfi(s, rho);
    const QfiSplit split = qfi_decompose(s);
    REQUIRE(split.incoherent >= 0.0);
    REQUIRE(split.coherent >= 0.0);
    REQUIRE(std::abs(split.incoherent + split.coherent - f) <= 1e-8 * std::max(1.0, f));
    REQUIRE(std::abs(o::qfi_two_sum(rho.matrix(), d.matrix()) - f) <= 1e-9 * std::max(1.0, f));
    REQUIRE(std::abs(o::qfi_lyapunov(rho.matrix(), d.matrix()) - f) <= 1e-8 * std::max(1.0, f));
    for (Eigen::Index a = 0; a < s.rotation.rows(); ++a) {
      for (Eigen::Index b = 0; b < s.rotation.cols(); ++b) {
        if (a == b) continue;
        REQUIRE(std::abs(s.rotation(a, b) + std::conj(s.rotation(b, a))) <= 1e-9);
        REQUIRE(s.sigma(a, b) >= 0.0);
        REQUIRE(s.sigma(a, b) == s.sigma(b, a));
      }
    }
  }
}

TEST_CASE("rank deficiency is flagged when weight leaks onto an empty level") {
  const DensityMatrix rho = DensityMatrix::diagonal((RealVector(2) << 1.0, 0.0).finished());
  const SldData s = solve_sld(rho, HermitianOperator(Matrix(0.5 * pauli::z())));
  CHECK(s.rank_deficient);
}

TEST_CASE("derivatives with non-zero trace are rejected") {
  try {
    solve_sld(DensityMatrix::maximally_mixed(2), HermitianOperator(Matrix(Matrix::Identity(2, 2) * 1e-6)));
    FAIL("expected NonTracelessDerivative");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonTracelessDerivative);
  }
}

}  // namespace
}  // namespace cqfi
