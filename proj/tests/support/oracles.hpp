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

// Reference computations that share no code with the library: closed-form
// 2x2 spectra, Kronecker-vectorized Lyapunov solves, matrix exponentials,
// and plain binomial tolerances. Tests compare library output against these.

#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace cqfi::oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using V = Eigen::VectorXcd;

inline M sx() { return (M(2, 2) << 0, 1, 1, 0).finished(); }
inline M sy() { return (M(2, 2) << 0, C(0, -1), C(0, 1), 0).finished(); }
inline M sz() { return (M(2, 2) << 1, 0, 0, -1).finished(); }
inline M sm() { return (M(2, 2) << 0, 0, 1, 0).finished(); }  // |1><0|, |0> excited
inline M id2() { return M::Identity(2, 2); }

// (tr +- sqrt(tr^2 - 4 det)) / 2, larger first.
inline std::pair<double, double> eig2(const M& a) {
  const double tr = a.trace().real();
  const double det = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).real();
  const double d = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  return {(tr + d) / 2.0, (tr - d) / 2.0};
}

// Solve drho = (L rho + rho L) / 2 as a dense linear system in vec(L).
inline M lyapunov(const M& rho, const M& drho) {
  const Eigen::Index n = rho.rows();
  const M id = M::Identity(n, n);
  M k = M::Zero(n * n, n * n);
  // vec(A X B) = (B^T kron A) vec(X)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      k.block(i * n, j * n, n, n) = 0.5 * (rho.transpose()(i, j) * id + id(i, j) * rho);
    }
  }
  const V b = Eigen::Map<const V>(drho.data(), n * n);
  const V x = k.fullPivLu().solve(b);
  return Eigen::Map<const M>(x.data(), n, n);
}

inline double qfi_lyapunov(const M& rho, const M& drho) {
  const M l = lyapunov(rho, drho);
  return (rho * l * l).trace().real();
}

// 2 sum_{xy} |<x|drho|y>|^2 / (p_x + p_y) in the eigenbasis of rho.
inline double qfi_two_sum(const M& rho, const M& drho) {
  Eigen::SelfAdjointEigenSolver<M> es(rho);
  const M d = es.eigenvectors().adjoint() * drho * es.eigenvectors();
  double f = 0.0;
  for (Eigen::Index x = 0; x < rho.rows(); ++x) {
    for (Eigen::Index y = 0; y < rho.rows(); ++y) {
      const double s = es.eigenvalues()(x) + es.eigenvalues()(y);
      if (s > 1e-12) f += 2.0 * std::norm(d(x, y)) / s;
    }
  }
  return f;
}

// 4 (<dpsi|dpsi> - |<psi|dpsi>|^2)
inline double qfi_pure(const V& psi, const V& dpsi) {
  return 4.0 * (dpsi.squaredNorm() - std::norm(psi.dot(dpsi)));
}

inline M expm(const M& a) { return a.exp(); }

// Gibbs state exp(-beta H) / Z.
inline M gibbs(const M& h, double beta) {
  const M e = (-beta * h).exp();
  return e / e.trace();
}

// Three-sigma half-width for a binomial frequency.
inline double binomial_3sigma(double p, double n) { return 3.0 * std::sqrt(p * (1.0 - p) / n); }

// Brute-force trapezoid over phase space of W_rho(r) exp(-2 k dt (x - alpha)^2) (a . (r - mu))^2,
// normalized by the same integral without the polynomial. W_rho is the Gaussian Wigner function.
inline double gaussian_conditional_grid(const Eigen::Vector2d& mu, const Eigen::Matrix2d& v, const Eigen::Vector2d& a,
                                        double k_dt, double alpha, int n = 801) {
  const Eigen::Matrix2d vi = v.inverse();
  const double span_x = 12.0 * std::sqrt(v(0, 0)), span_p = 12.0 * std::sqrt(v(1, 1));
  const double hx = 2.0 * span_x / (n - 1), hp = 2.0 * span_p / (n - 1);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Eigen::Vector2d d(-span_x + i * hx, -span_p + j * hp);
      const double x = mu(0) + d(0);
      const double w = std::exp(-0.5 * d.dot(vi * d) - 2.0 * k_dt * (x - alpha) * (x - alpha));
      const double l = a.dot(d);
      num += w * l * l;
      den += w;
    }
  }
  return num / den;
}

// Truncated Fock space: a Gaussian state built as D(mu) R(phi) S(r) rho_thermal(n) S^dag R^dag D^dag,
// with x = (a + a^dag) / sqrt 2, p = i (a^dag - a) / sqrt 2.
struct Fock {
  int n;
  M a, x, p;
  explicit Fock(int dim) : n(dim), a(M::Zero(dim, dim)) {
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    x = (a + a.adjoint()) / std::sqrt(2.0);
    p = C(0, 1) * (a.adjoint() - a) / std::sqrt(2.0);
  }
  M gaussian(double nbar, double r, double phi, double mx, double mp) const {
    M th = M::Zero(n, n);
    for (int k = 0; k < n; ++k) th(k, k) = std::pow(nbar / (1.0 + nbar), k) / (1.0 + nbar);
    const M s = (0.5 * r * (a * a - a.adjoint() * a.adjoint())).eval().exp();
    const M rot = (C(0, -phi) * (a.adjoint() * a)).eval().exp();
    const M d = (C(0, 1) * (mp * x - mx * p)).eval().exp();
    const M u = d * rot * s;
    M rho = u * th * u.adjoint();
    return rho / rho.trace();
  }
  // exp(-c (x - alpha)^2) through the spectral decomposition of the truncated x.
  M gaussian_in_x(double c, double alpha) const {
    Eigen::SelfAdjointEigenSolver<M> es(x);
    Eigen::VectorXd w = es.eigenvalues();
    for (Eigen::Index k = 0; k < w.size(); ++k) w(k) = std::exp(-c * (w(k) - alpha) * (w(k) - alpha));
    return es.eigenvectors() * w.cast<C>().asDiagonal() * es.eigenvectors().adjoint();
  }
};

}  // namespace cqfi::oracle
