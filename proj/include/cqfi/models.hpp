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

// Concrete models:
//   * the resonantly driven thermal qubit in the rotating frame,
//   * a thermal qubit sensing a transverse field (closed-form oracle),
//   * a Gaussian oscillator sensing a constant force.

#pragma once

#include <Eigen/Dense>

#include "cqfi/lindblad.hpp"
#include "cqfi/operator_core.hpp"

namespace cqfi {

// ---- driven thermal qubit -------------------------------------------------

struct DrivenQubitParams {
  double omega = 1.0;
  double epsilon = 0.1;
  double gamma0 = 0.05;
  double temperature = 0.91023922662683739;  // 1 / ln 3, so n_bar = 0.5
};

/// (e^{omega/T} - 1)^{-1}; zero at T = 0.
double bose_occupation(double omega, double temperature);
/// Inverse of bose_occupation in T.
double temperature_for_occupation(double omega, double n_bar);

/// H = epsilon sigma_x, L_- = sqrt(gamma0 (n+1)) sigma_-, L_+ = sqrt(gamma0 n) sigma_+
/// (L_+ omitted when its rate is zero). Channel 0 is emission, channel 1 absorption.
GKSLModel build_driven_qubit(const DrivenQubitParams& p);

/// Bath-equilibrium populations p_e / p_g = n / (n + 1), diagonal in sigma_z.
DensityMatrix driven_qubit_initial_state(const DrivenQubitParams& p);

/// epsilon sigma_x, the rotating-frame Hamiltonian used as observable.
HermitianOperator driven_qubit_hamiltonian(const DrivenQubitParams& p);

// ---- thermal field sensor -------------------------------------------------
// H(theta) = (Delta sigma_z + theta sigma_x) / 2, energies +-Omega/2 with
// Omega = sqrt(Delta^2 + theta^2); rho = exp(-beta H) / Z.

struct ThermalFieldSensorParams {
  double delta = 1.0;
  double theta = 1.0;
  double beta = 1.0;
};

struct ThermalSensorClosedForm {
  double omega = 0.0;  // generalized Rabi frequency
  double p_plus = 0.0, p_minus = 0.0;
  double f_ic_plus = 0.0, f_ic_minus = 0.0;
  double f_c = 0.0;           // (Delta^2 / Omega^4) tanh(beta Omega / 2), as usually quoted
  double f_c_rotation = 0.0;  // (Delta^2 / Omega^4) tanh^2(beta Omega / 2), from |<-|d+>| = Delta / (2 Omega^2)
};

ThermalSensorClosedForm thermal_sensor_closed_forms(const ThermalFieldSensorParams& p);
Matrix thermal_sensor_hamiltonian(const ThermalFieldSensorParams& p);
DensityMatrix thermal_sensor_state(const ThermalFieldSensorParams& p);

struct ThermalSensorDerivative {
  HermitianOperator drho = HermitianOperator::zero(2);
  double step = 0.0;
  double richardson_gap = 0.0;  // ||D(h) - D(h/2)||_F
};
/// Fourth-order central difference in theta with h = 1e-4 max(1, |theta|).
ThermalSensorDerivative thermal_sensor_derivative(const ThermalFieldSensorParams& p);

/// The generic SLD / CQFI pipeline applied to the numerically built state.
struct ThermalSensorNumeric {
  double p_plus = 0.0, p_minus = 0.0;
  double f_ic_plus = 0.0, f_ic_minus = 0.0;
  double f_c_plus = 0.0, f_c_minus = 0.0;  // coherent part for the |+> and |-> probes
  double cross_plus = 0.0, cross_minus = 0.0;
  double f_q = 0.0;
  double richardson_gap = 0.0;
};
ThermalSensorNumeric thermal_sensor_numeric(const ThermalFieldSensorParams& p);

// ---- Gaussian force sensor ------------------------------------------------
// hbar = 1, vacuum covariance diag(1/2, 1/2); H = omega a^dagger a - theta x.

struct GaussianState {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d cov = 0.5 * Eigen::Matrix2d::Identity();

  /// Throws kInvalidState unless cov is symmetric with det >= 1/4.
  void validate() const;
};

/// 4 t^2 V_x / det V.
double gaussian_qfi(const GaussianState& s, double t);

/// SLD L = a_x (x - <x>) + a_p (p - <p>) for the force after time t.
Eigen::Vector2d gaussian_sld_coefficients(const GaussianState& s, double t);

/// Conditional Fisher information for the Gaussian x-POVM of strength
/// k dt with outcome alpha, by Gauss-Hermite quadrature over phase space
/// (Wigner function times POVM symbol times L^2). Evaluated with 20 and 28
/// nodes per axis; kQuadratureNonConvergence if they differ beyond 1e-7.
double gaussian_cqfi(const GaussianState& s, double t, double k_dt, double alpha);

/// Moments after time t: rotation about (theta / omega, 0) for the mean,
/// V -> R V R^T for the covariance.
GaussianState gaussian_evolve_moments(const GaussianState& s, double theta, double omega, double t);

}  // namespace cqfi
