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

#include "cqfi/conditional.hpp"
#include "cqfi/models.hpp"
#include "cqfi/quadrature.hpp"
#include "cqfi/random.hpp"
#include "support/oracles.hpp"

namespace cqfi {
namespace {

namespace o = oracle;

TEST_CASE("driven qubit: zero temperature drops the absorption channel") {
  DrivenQubitParams p;
  p.temperature = 0.0;
  CHECK(bose_occupation(p.omega, p.temperature) == 0.0);
  const GKSLModel m = build_driven_qubit(p);
  REQUIRE(m.jumps().size() == 1);
  CHECK(m.jumps()[0].label == "emission");
  CHECK((m.jumps()[0].op - std::sqrt(p.gamma0) * o::sm()).norm() < 1e-16);
}

TEST_CASE("Bose occupation at omega / T = 1") {
  // 1 / (e - 1)
  CHECK(std::abs(bose_occupation(1.0, 1.0) - 0.58197670686932642) < 1e-15);
  CHECK(std::abs(temperature_for_occupation(1.0, 0.58197670686932642) - 1.0) < 1e-14);
  // The default temperature is 1 / ln 3, i.e. n = 1/2.
  CHECK(std::abs(bose_occupation(1.0, DrivenQubitParams{}.temperature) - 0.5) < 1e-15);
}

TEST_CASE("driven qubit rate ratio is exp(omega / T) for random parameters") {
  PhiloxStream rng(51, 0);
  for (int k = 0; k < 100; ++k) {
    DrivenQubitParams p;
    p.omega = 0.5 + 2.0 * rng.uniform();
    p.epsilon = 0.2 * p.omega * rng.uniform();
    p.gamma0 = 0.01 + 0.1 * rng.uniform();
    p.temperature = 0.2 + 3.0 * rng.uniform();
    const GKSLModel m = build_driven_qubit(p);
    REQUIRE(m.jumps().size() == 2);
    const double down = m.jumps()[0].op.squaredNorm(), up = m.jumps()[1].op.squaredNorm();
    REQUIRE(std::abs(down / up - std::exp(p.omega / p.temperature)) <= 1e-12 * down / up);
    REQUIRE(m.balance().size() == 1);
    REQUIRE(std::abs(m.balance()[0].entropy_flow - p.omega / p.temperature) < 1e-15);
  }
}

TEST_CASE("driven qubit without dissipation") {
  DrivenQubitParams p;
  p.gamma0 = 0.0;
  const GKSLModel m = build_driven_qubit(p);
  CHECK(m.max_rate() == 0.0);
  CHECK((m.hamiltonian(0.0) - 0.1 * pauli::x()).norm() < 1e-16);
}

TEST_CASE("thermal sensor limits: theta = 0 kills f_IC, beta = 0 kills f_C") {
  const ThermalSensorClosedForm a = thermal_sensor_closed_forms({1.3, 0.0, 0.7});
  CHECK(a.f_ic_plus == 0.0);
  CHECK(a.f_ic_minus == 0.0);
  const ThermalSensorNumeric an = thermal_sensor_numeric({1.3, 0.0, 0.7});
  CHECK(std::abs(an.f_ic_plus) <= 1e-12);
  CHECK(std::abs(an.f_ic_minus) <= 1e-12);

  const ThermalSensorClosedForm b = thermal_sensor_closed_forms({1.3, 0.4, 0.0});
  CHECK(b.f_c == 0.0);
  CHECK(b.f_c_rotation == 0.0);
  const ThermalSensorNumeric bn = thermal_sensor_numeric({1.3, 0.4, 0.0});
  CHECK(std::abs(bn.f_c_plus) <= 1e-12);
  CHECK(std::abs(bn.f_c_minus) <= 1e-12);
}

TEST_CASE("thermal sensor at Delta = theta = beta = 1") {
  const ThermalSensorClosedForm c = thermal_sensor_closed_forms({1.0, 1.0, 1.0});
  CHECK(std::abs(c.omega - std::sqrt(2.0)) < 1e-15);
  // Frozen from a 40-digit evaluation.
  CHECK(std::abs(c.p_plus - 0.19557031749304309) < 1e-15);
  CHECK(std::abs(c.f_ic_plus - 0.32355355704912174) < 1e-15);
  CHECK(std::abs(c.f_ic_minus - 0.019123874542164839) < 1e-15);
  CHECK(std::abs(c.f_c - 0.15221484125347845) < 1e-15);           // (1/4) tanh(sqrt 2 / 2)
  CHECK(std::abs(c.f_c_rotation - 0.092677431591286583) < 1e-15);  // (1/4) tanh^2(sqrt 2 / 2)

  const ThermalSensorNumeric n = thermal_sensor_numeric({1.0, 1.0, 1.0});
  CHECK(std::abs(n.p_plus - c.p_plus) < 1e-12);
  CHECK(std::abs(n.f_ic_plus - c.f_ic_plus) < 1e-6);
  CHECK(std::abs(n.f_ic_minus - c.f_ic_minus) < 1e-6);
  // The generic pipeline lands on the tanh^2 form for both probes.
  CHECK(std::abs(n.f_c_plus - c.f_c_rotation) < 1e-6);
  CHECK(std::abs(n.f_c_minus - c.f_c_rotation) < 1e-6);
  CHECK(std::abs(n.f_c_plus - c.f_c) > 0.05);
  CHECK(n.richardson_gap < 1e-9);
}

TEST_CASE("generic pipeline reproduces the sensor populations and incoherent parts on random draws") {
  PhiloxStream rng(52, 0);
  for (int k = 0; k < 50; ++k) {
    const ThermalFieldSensorParams p{0.2 + 1.8 * rng.uniform(), -2.0 + 4.0 * rng.uniform(), 0.1 + 4.9 * rng.uniform()};
    const ThermalSensorClosedForm c = thermal_sensor_closed_forms(p);
    const ThermalSensorNumeric n = thermal_sensor_numeric(p);
    REQUIRE(std::abs(n.p_plus - c.p_plus) <= 1e-6);
    REQUIRE(std::abs(n.p_minus - c.p_minus) <= 1e-6);
    REQUIRE(std::abs(n.f_ic_plus - c.f_ic_plus) <= 1e-6 * std::max(1.0, c.f_ic_plus));
    REQUIRE(std::abs(n.f_ic_minus - c.f_ic_minus) <= 1e-6 * std::max(1.0, c.f_ic_minus));
    REQUIRE(std::abs(n.f_c_plus - c.f_c_rotation) <= 1e-6);
    REQUIRE(std::abs(n.f_c_minus - c.f_c_rotation) <= 1e-6);
    // Ensemble split agrees with an independent Lyapunov solve.
    const Matrix rho = o::gibbs(thermal_sensor_hamiltonian(p), p.beta);
    REQUIRE((rho - thermal_sensor_state(p).matrix()).norm() < 1e-13);
    REQUIRE(std::abs(o::qfi_lyapunov(rho, thermal_sensor_derivative(p).drho.matrix()) - n.f_q) <= 1e-9);
  }
}

TEST_CASE("Gaussian QFI examples") {
  GaussianState coherent;
  CHECK(std::abs(gaussian_qfi(coherent, 1.0) - 8.0) < 1e-15);
  CHECK(std::abs(gaussian_qfi(coherent, 2.5) - 50.0) < 1e-13);
  CHECK(gaussian_qfi(coherent, 0.0) == 0.0);
  GaussianState wide;
  wide.cov *= 2.0;
  CHECK(std::abs(gaussian_qfi(wide, 1.7) - 0.5 * gaussian_qfi(coherent, 1.7)) < 1e-13);
  GaussianState singular;
  singular.cov << 1.0, 1.0, 1.0, 1.0;
  try {
    gaussian_qfi(singular, 1.0);
    FAIL("expected SingularCovariance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSingularCovariance);
  }
  GaussianState bad;
  bad.cov << 0.1, 0.0, 0.0, 0.1;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("Gaussian conditional value is outcome independent and matches a brute-force phase-space integral") {
  GaussianState s;
  s.mean << 0.3, -0.2;
  s.cov << 0.9, 0.25, 0.25, 0.6;
  s.validate();
  const double t = 1.3, fq = gaussian_qfi(s, t);
  const Eigen::Vector2d a = gaussian_sld_coefficients(s, t);
  CHECK(std::abs(a.dot(s.cov * a) - fq) < 1e-12 * fq);
  for (double alpha : {s.mean(0), s.mean(0) + 3.0 * std::sqrt(s.cov(0, 0)), -2.0}) {
    for (double k_dt : {0.01, 1.0, 100.0}) {
      const double got = gaussian_cqfi(s, t, k_dt, alpha);
      REQUIRE(std::abs(got - fq) <= 1e-8 * fq);
    }
    REQUIRE(std::abs(o::gaussian_conditional_grid(s.mean, s.cov, a, 1.0, alpha) - fq) <= 1e-8 * fq);
  }
}

TEST_CASE("operator-ordered conditional forms depend on the outcome") {
  // Vacuum, t = 1, k dt = 1: L = -4 p. The phase-space value is 8 for every outcome,
  // Tr(rho Pi L^2) / Tr(rho Pi) is not (40/3 at alpha = 0, -8/3 at alpha = 1.5).
  const o::Fock f(60);
  const o::M rho = f.gaussian(0.0, 0.0, 0.0, 0.0, 0.0);
  const o::M l = -4.0 * f.p;
  const o::M l2 = l * l;
  CHECK(std::abs((rho * l2).trace().real() - 8.0) < 1e-10);
  auto trace_form = [&](double alpha) {
    const o::M pi = f.gaussian_in_x(2.0, alpha);
    return ((rho * pi * l2).trace() / (rho * pi).trace()).real();
  };
  CHECK(std::abs(trace_form(0.0) - 40.0 / 3.0) < 1e-8);
  CHECK(std::abs(trace_form(1.5) + 8.0 / 3.0) < 1e-8);
  GaussianState vac;
  CHECK(std::abs(gaussian_cqfi(vac, 1.0, 1.0, 0.0) - 8.0) < 1e-13);
  CHECK(std::abs(gaussian_cqfi(vac, 1.0, 1.0, 1.5) - 8.0) < 1e-13);
}

TEST_CASE("Gaussian conditional value over 100 random draws") {
  PhiloxStream rng(53, 0);
  for (int k = 0; k < 100; ++k) {
    GaussianState s;
    const double r = rng.uniform(), phi = 3.0 * rng.uniform(), nth = 2.0 * rng.uniform();
    const Eigen::Matrix2d sq = (Eigen::Matrix2d() << std::exp(-2 * r), 0, 0, std::exp(2 * r)).finished();
    Eigen::Matrix2d rot;
    rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    s.cov = (nth + 0.5) * rot * sq * rot.transpose();
    s.cov(1, 0) = s.cov(0, 1);
    s.mean << rng.uniform() - 0.5, rng.uniform() - 0.5;
    s.validate();
    const double t = 0.1 + 5.0 * rng.uniform();
    const double alpha = s.mean(0) + 4.0 * (rng.uniform() - 0.5) * std::sqrt(s.cov(0, 0));
    const double k_dt = std::pow(10.0, -2.0 + 4.0 * rng.uniform());
    REQUIRE(std::abs(gaussian_cqfi(s, t, k_dt, alpha) - gaussian_qfi(s, t)) <= 1e-7 * gaussian_qfi(s, t));
  }
}

TEST_CASE("Gaussian moment flow") {
  GaussianState iso;
  iso.cov *= 1.7;
  const GaussianState a = gaussian_evolve_moments(iso, 0.0, 1.0, 0.83);
  CHECK((a.cov - iso.cov).norm() < 1e-15);
  CHECK(a.mean.norm() == 0.0);

  GaussianState d;
  d.cov << 2.0, 0.0, 0.0, 0.125;
  const GaussianState q = gaussian_evolve_moments(d, 0.0, 2.0, std::acos(-1.0) / 4.0);
  CHECK(std::abs(q.cov(0, 0) - 0.125) < 1e-15);
  CHECK(std::abs(q.cov(1, 1) - 2.0) < 1e-15);
  CHECK(std::abs(q.cov(0, 1)) < 1e-15);

  // A constant force moves the centre to theta / omega: after half a period x = 2 theta / omega.
  const GaussianState h = gaussian_evolve_moments(GaussianState{}, 0.3, 1.0, std::acos(-1.0));
  CHECK(std::abs(h.mean(0) - 0.6) < 1e-15);
  CHECK(std::abs(h.mean(1)) < 1e-15);
}

TEST_CASE("Gauss-Hermite rules integrate polynomials against exp(-x^2)") {
  for (std::size_t n : {5, 20, 28}) {
    const GaussHermiteRule r = gauss_hermite(n);
    CHECK(std::abs(r.weights.sum() - std::sqrt(std::acos(-1.0))) < 1e-13);
    CHECK(std::abs(r.weights.dot(r.nodes.array().square().matrix()) - 0.5 * std::sqrt(std::acos(-1.0))) < 1e-13);
    CHECK(std::abs(r.weights.dot(r.nodes.array().pow(4).matrix()) - 0.75 * std::sqrt(std::acos(-1.0))) < 1e-12);
    CHECK(std::abs(r.weights.dot(r.nodes)) < 1e-13);
  }
  // Five-node rule: largest node is sqrt(5/2 + sqrt(10)/2).
  CHECK(std::abs(gauss_hermite(5).nodes.maxCoeff() - std::sqrt(2.5 + std::sqrt(10.0) / 2.0)) < 1e-13);
}

}  // namespace
}  // namespace cqfi
