// Copyright 2026 The decosim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Shared test oracles. Everything here is deliberately brute-force and
// independent of the library's computation paths.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace testsupport {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// Quadruple-loop Kronecker product, A's indices slowest.
inline Matrix kron_oracle(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (Eigen::Index k = 0; k < b.rows(); ++k) {
        for (Eigen::Index l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

// Explicit double sum over the environment basis for a bipartite pure
// state, keeping the first factor.
inline Matrix reduced_keep_first_oracle(const Vector& psi, Eigen::Index d_sys,
                                        Eigen::Index d_env) {
  Matrix rho = Matrix::Zero(d_sys, d_sys);
  for (Eigen::Index a = 0; a < d_sys; ++a) {
    for (Eigen::Index b = 0; b < d_sys; ++b) {
      for (Eigen::Index e = 0; e < d_env; ++e) {
        rho(a, b) += psi(a * d_env + e) * std::conj(psi(b * d_env + e));
      }
    }
  }
  return rho;
}

// Naive triple-loop <psi|H|psi>.
inline Complex expectation_oracle(const Matrix& h, const Vector& psi) {
  Complex sum = 0.0;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      sum += std::conj(psi(i)) * h(i, j) * psi(j);
    }
  }
  return sum;
}

inline Matrix random_hermitian(std::mt19937_64& rng, Eigen::Index d,
                               double scale = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      m(i, j) = Complex(u(rng), u(rng));
    }
  }
  return scale * 0.5 * (m + m.adjoint().eval());
}

inline Vector random_unit_vector(std::mt19937_64& rng, Eigen::Index d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = Complex(u(rng), u(rng));
  return v / v.norm();
}

inline Matrix random_unitary(std::mt19937_64& rng, Eigen::Index d) {
  Matrix m(d, d);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(u(rng), u(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(m);
  return Matrix(qr.householderQ());
}

// Independent fixed-step RK4 integrator for i dpsi/dt = H psi (hbar = 1).
inline Vector rk4_schrodinger_oracle(const Matrix& h, Vector psi, double t,
                                     double dt) {
  const Complex scale(0.0, -1.0);
  auto n = static_cast<std::size_t>(std::llround(t / dt));
  Vector k1, k2, k3, k4;
  for (std::size_t s = 0; s < n; ++s) {
    k1 = scale * (h * psi);
    k2 = scale * (h * (psi + 0.5 * dt * k1));
    k3 = scale * (h * (psi + 0.5 * dt * k2));
    k4 = scale * (h * (psi + dt * k3));
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

// Classical point mass on the sampled periodic potential, RK4 in (x, p).
// The force is the centered difference of linear interpolation.
inline std::vector<double> classical_trajectory_oracle(
    const std::vector<double>& potential, double mass, double x0, double p0,
    const std::vector<double>& times) {
  const auto n = potential.size();
  auto v_at = [&](double x) {
    double xm = std::fmod(x, static_cast<double>(n));
    if (xm < 0) xm += static_cast<double>(n);
    auto i0 = static_cast<std::size_t>(xm);
    double frac = xm - static_cast<double>(i0);
    return potential[i0 % n] * (1.0 - frac) + potential[(i0 + 1) % n] * frac;
  };
  auto force = [&](double x) {
    const double h = 1e-4;
    return -(v_at(x + h) - v_at(x - h)) / (2.0 * h);
  };
  std::vector<double> xs;
  xs.reserve(times.size());
  double x = x0, p = p0, t_now = times.front();
  xs.push_back(x);
  for (std::size_t k = 1; k < times.size(); ++k) {
    double span = times[k] - t_now;
    int steps = std::max(1, static_cast<int>(std::ceil(span / 1e-3)));
    double dt = span / steps;
    for (int s = 0; s < steps; ++s) {
      double kx1 = p / mass, kp1 = force(x);
      double kx2 = (p + 0.5 * dt * kp1) / mass, kp2 = force(x + 0.5 * dt * kx1);
      double kx3 = (p + 0.5 * dt * kp2) / mass, kp3 = force(x + 0.5 * dt * kx2);
      double kx4 = (p + dt * kp3) / mass, kp4 = force(x + dt * kx3);
      x += (dt / 6.0) * (kx1 + 2 * kx2 + 2 * kx3 + kx4);
      p += (dt / 6.0) * (kp1 + 2 * kp2 + 2 * kp3 + kp4);
    }
    t_now = times[k];
    xs.push_back(x);
  }
  return xs;
}

// R^2 of a one-parameter fit ln y = ln C - ln x (slope pinned to -1).
inline double log_log_inverse_fit_r2(const std::vector<double>& x,
                                     const std::vector<double>& y,
                                     double* c_out = nullptr) {
  const auto n = x.size();
  double mean_resid = 0.0;
  std::vector<double> resid(n);
  for (std::size_t k = 0; k < n; ++k) {
    resid[k] = std::log(y[k]) + std::log(x[k]);  // = ln C + noise
    mean_resid += resid[k];
  }
  mean_resid /= static_cast<double>(n);
  if (c_out) *c_out = std::exp(mean_resid);
  double ss_res = 0.0, ss_tot = 0.0, mean_ly = 0.0;
  for (std::size_t k = 0; k < n; ++k) mean_ly += std::log(y[k]);
  mean_ly /= static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    double fit = mean_resid - std::log(x[k]);
    ss_res += (std::log(y[k]) - fit) * (std::log(y[k]) - fit);
    ss_tot += (std::log(y[k]) - mean_ly) * (std::log(y[k]) - mean_ly);
  }
  return 1.0 - ss_res / ss_tot;
}

}  // namespace testsupport
