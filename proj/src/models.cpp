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

#include "cqfi/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cqfi/conditional.hpp"
#include "cqfi/quadrature.hpp"
#include "cqfi/sld_qfi.hpp"

namespace cqfi {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace

double bose_occupation(double omega, double temperature) {
  require(omega > 0.0 && std::isfinite(omega), "omega must be positive");
  require(temperature >= 0.0 && std::isfinite(temperature), "temperature must be non-negative");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(omega / temperature);
}

double temperature_for_occupation(double omega, double n_bar) {
  require(omega > 0.0 && std::isfinite(omega), "omega must be positive");
  require(n_bar >= 0.0 && std::isfinite(n_bar), "n_bar must be non-negative");
  if (n_bar == 0.0) return 0.0;
  return omega / std::log1p(1.0 / n_bar);
}

GKSLModel build_driven_qubit(const DrivenQubitParams& p) {
  require(p.epsilon >= 0.0 && std::isfinite(p.epsilon), "epsilon must be non-negative");
  require(p.gamma0 >= 0.0 && std::isfinite(p.gamma0), "gamma0 must be non-negative");
  const double n = bose_occupation(p.omega, p.temperature);
  std::vector<JumpChannel> jumps{{"emission", std::sqrt(p.gamma0 * (n + 1.0)) * pauli::sigma_minus()}};
  std::vector<DetailedBalancePair> balance;
  if (n > 0.0 && p.gamma0 > 0.0) {
    jumps.push_back({"absorption", std::sqrt(p.gamma0 * n) * pauli::sigma_plus()});
    balance.push_back({0, 1, p.gamma0 * (n + 1.0), p.gamma0 * n, p.omega / p.temperature});
  }
  return GKSLModel(p.epsilon * pauli::x(), std::move(jumps), std::move(balance));
}

DensityMatrix driven_qubit_initial_state(const DrivenQubitParams& p) {
  const double n = bose_occupation(p.omega, p.temperature);
  RealVector pops(2);
  pops << n / (2.0 * n + 1.0), (n + 1.0) / (2.0 * n + 1.0);
  return DensityMatrix::diagonal(pops);
}

HermitianOperator driven_qubit_hamiltonian(const DrivenQubitParams& p) {
  return HermitianOperator(p.epsilon * pauli::x());
}

// ---- thermal field sensor -------------------------------------------------

namespace {

void validate(const ThermalFieldSensorParams& p) {
  require(std::isfinite(p.delta) && std::isfinite(p.theta) && std::isfinite(p.beta), "sensor params must be finite");
  require(p.beta >= 0.0, "beta must be non-negative");
  require(std::hypot(p.delta, p.theta) > 0.0, "Omega must be positive");
}

}  // namespace

ThermalSensorClosedForm thermal_sensor_closed_forms(const ThermalFieldSensorParams& p) {
  validate(p);
  ThermalSensorClosedForm out;
  const double om = std::hypot(p.delta, p.theta);
  const double th = std::tanh(0.5 * p.beta * om);
  const double pre = p.beta * p.beta * p.theta * p.theta / (4.0 * om * om);
  out.omega = om;
  out.p_plus = 0.5 * (1.0 - th);
  out.p_minus = 0.5 * (1.0 + th);
  out.f_ic_plus = pre * (1.0 + th) * (1.0 + th);
  out.f_ic_minus = pre * (1.0 - th) * (1.0 - th);
  const double om4 = om * om * om * om;
  out.f_c = p.delta * p.delta / om4 * th;
  out.f_c_rotation = p.delta * p.delta / om4 * th * th;
  return out;
}

Matrix thermal_sensor_hamiltonian(const ThermalFieldSensorParams& p) {
  return 0.5 * (p.delta * pauli::z() + p.theta * pauli::x());
}

DensityMatrix thermal_sensor_state(const ThermalFieldSensorParams& p) {
  validate(p);
  const SpectralState h = eig_hermitian(HermitianOperator(thermal_sensor_hamiltonian(p)));
  // Shift by the ground energy so the weights never overflow.
  const double e0 = h.eigenvalues.minCoeff();
  RealVector w = (-p.beta * (h.eigenvalues.array() - e0)).exp();
  w /= w.sum();
  const Matrix rho = h.eigenvectors * w.cast<cplx>().asDiagonal() * h.eigenvectors.adjoint();
  return DensityMatrix(Matrix(0.5 * (rho + rho.adjoint())));
}

namespace {

Matrix fd4(const ThermalFieldSensorParams& p, double h) {
  auto at = [&](double dtheta) {
    ThermalFieldSensorParams q = p;
    q.theta += dtheta;
    return thermal_sensor_state(q).matrix();
  };
  return (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h);
}

}  // namespace

ThermalSensorDerivative thermal_sensor_derivative(const ThermalFieldSensorParams& p) {
  validate(p);
  ThermalSensorDerivative out;
  out.step = 1e-4 * std::max(1.0, std::abs(p.theta));
  const Matrix d1 = fd4(p, out.step);
  const Matrix d2 = fd4(p, 0.5 * out.step);
  out.richardson_gap = (d1 - d2).norm();
  Matrix d = 0.5 * (d1 + d1.adjoint());
  // The trace of a difference of unit-trace states is zero up to rounding.
  d -= (d.trace() / 2.0) * Matrix::Identity(2, 2);
  out.drho = HermitianOperator(d);
  return out;
}

ThermalSensorNumeric thermal_sensor_numeric(const ThermalFieldSensorParams& p) {
  const DensityMatrix rho = thermal_sensor_state(p);
  const ThermalSensorDerivative der = thermal_sensor_derivative(p);
  const SldData sld = solve_sld(rho, der.drho);
  const HermitianOperator h(thermal_sensor_hamiltonian(p));

  ThermalSensorNumeric out;
  out.f_q = qfi(sld, rho);
  out.richardson_gap = der.richardson_gap;
  // Label the eigenvectors by energy so the degenerate beta = 0 case is still well defined.
  const Vector v0 = sld.spectral.eigenvectors.col(0);
  const Vector v1 = sld.spectral.eigenvectors.col(1);
  const bool first_is_plus = v0.dot(h.matrix() * v0).real() > v1.dot(h.matrix() * v1).real();
  const Eigen::Index ip = first_is_plus ? 0 : 1;
  const Eigen::Index im = 1 - ip;
  const CqfiSample sp = cqfi_pure(PureState::normalized(sld.spectral.eigenvectors.col(ip)), sld, rho);
  const CqfiSample sm = cqfi_pure(PureState::normalized(sld.spectral.eigenvectors.col(im)), sld, rho);
  out.p_plus = sld.spectral.eigenvalues(ip);
  out.p_minus = sld.spectral.eigenvalues(im);
  out.f_ic_plus = sp.ic;
  out.f_ic_minus = sm.ic;
  out.f_c_plus = sp.coh;
  out.f_c_minus = sm.coh;
  out.cross_plus = sp.cross;
  out.cross_minus = sm.cross;
  return out;
}

// ---- Gaussian force sensor ------------------------------------------------

void GaussianState::validate() const {
  if (!mean.allFinite() || !cov.allFinite()) throw Error(ErrorCode::kInvalidState, "non-finite Gaussian moments");
  if (cov(0, 1) != cov(1, 0)) throw Error(ErrorCode::kInvalidState, "covariance is not symmetric");
  if (!(cov(0, 0) > 0.0) || !(cov(1, 1) > 0.0)) throw Error(ErrorCode::kInvalidState, "covariance not positive");
  const double det = cov.determinant();
  if (det < 0.25 * (1.0 - 1e-12)) {
    throw Error(ErrorCode::kInvalidState, "det V = " + std::to_string(det) + " violates the uncertainty bound 1/4");
  }
}

namespace {

double checked_det(const GaussianState& s) {
  if (!s.cov.allFinite()) throw Error(ErrorCode::kSingularCovariance, "non-finite covariance");
  const double det = s.cov.determinant();
  if (!(det > 0.0)) throw Error(ErrorCode::kSingularCovariance, "det V = " + std::to_string(det));
  return det;
}

// E[(a . (r - mu))^2] under the posterior Gaussian, as sum w g / sum w on an n x n rule.
double posterior_second_moment(const Eigen::Vector2d& shift, const Eigen::Matrix2d& post_cov,
                               const Eigen::Vector2d& a, std::size_t n) {
  const GaussHermiteRule rule = gauss_hermite(n);
  const Eigen::LLT<Eigen::Matrix2d> llt(post_cov);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::kSingularCovariance, "posterior covariance not PD");
  const Eigen::Matrix2d c = std::sqrt(2.0) * llt.matrixL().toDenseMatrix();
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    for (Eigen::Index j = 0; j < rule.nodes.size(); ++j) {
      const Eigen::Vector2d r = shift + c * Eigen::Vector2d(rule.nodes(i), rule.nodes(j));
      const double w = rule.weights(i) * rule.weights(j);
      const double l = a.dot(r);
      num += w * l * l;
      den += w;
    }
  }
  return num / den;
}

}  // namespace

double gaussian_qfi(const GaussianState& s, double t) {
  const double det = checked_det(s);
  return 4.0 * t * t * s.cov(0, 0) / det;
}

Eigen::Vector2d gaussian_sld_coefficients(const GaussianState& s, double t) {
  const double det = checked_det(s);
  return {2.0 * t * s.cov(0, 1) / det, -2.0 * t * s.cov(0, 0) / det};
}

double gaussian_cqfi(const GaussianState& s, double t, double k_dt, double alpha) {
  if (!(k_dt > 0.0) || !std::isfinite(k_dt)) throw Error(ErrorCode::kInvalidArgument, "k dt must be positive");
  if (!std::isfinite(alpha)) throw Error(ErrorCode::kInvalidArgument, "outcome must be finite");
  const Eigen::Vector2d a = gaussian_sld_coefficients(s, t);
  // POVM symbol exp(-2 k dt (x - alpha)^2): a Gaussian in x of variance 1 / (4 k dt).
  // Its product with the Wigner function is Gaussian again (condition on x).
  const double s2 = 1.0 / (4.0 * k_dt);
  const Eigen::Vector2d ve = s.cov.col(0);
  const double denom = s.cov(0, 0) + s2;
  const Eigen::Vector2d shift = ve * ((alpha - s.mean(0)) / denom);  // posterior mean minus prior mean
  Eigen::Matrix2d post = s.cov - ve * ve.transpose() / denom;
  post(0, 1) = post(1, 0) = 0.5 * (post(0, 1) + post(1, 0));
  const double q_lo = posterior_second_moment(shift, post, a, 20);
  const double q_hi = posterior_second_moment(shift, post, a, 28);
  if (std::abs(q_hi - q_lo) > 1e-7 * std::abs(q_hi)) {
    throw Error(ErrorCode::kQuadratureNonConvergence,
                "Gauss-Hermite 20 vs 28 nodes: " + std::to_string(q_lo) + " vs " + std::to_string(q_hi));
  }
  return q_hi;
}

GaussianState gaussian_evolve_moments(const GaussianState& s, double theta, double omega, double t) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw Error(ErrorCode::kInvalidArgument, "omega must be positive");
  const double c = std::cos(omega * t), sn = std::sin(omega * t);
  Eigen::Matrix2d r;
  r << c, sn, -sn, c;
  const Eigen::Vector2d centre(theta / omega, 0.0);
  GaussianState out;
  out.mean = centre + r * (s.mean - centre);
  out.cov = r * s.cov * r.transpose();
  out.cov(0, 1) = out.cov(1, 0) = 0.5 * (out.cov(0, 1) + out.cov(1, 0));
  return out;
}

}  // namespace cqfi
