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

#pragma once

#include <vector>

#include "decosim/dynamics.hpp"
#include "decosim/hilbert.hpp"

namespace decosim {

// Two-level system monitored by an external field. The energy eigenstates
// |up>, |down> of h_phi carry interaction-energy rates lambda so that
// Lambda_s(t) = lambda_s (t - t0) under constant monitoring; the general
// case integrates the expectation of v_matrix along the free evolution.
struct TwoStateModel {
  double eps_up = 1.0;
  double eps_down = -1.0;
  double lambda_up_rate = 0.0;
  double lambda_down_rate = 0.0;
  Matrix v_matrix = Matrix::Zero(2, 2);  // V in the energy basis, hermitian
  std::size_t env_dim = 1;
  double hbar = 1.0;
  double t0 = 0.0;
  enum class Monitoring { constant_rates, integrated };
  Monitoring monitoring = Monitoring::constant_rates;
};

void validate(const TwoStateModel& model);

// One member of the theta family cos(theta)|up> + sin(theta)|down>,
// theta in [0, pi/2]. A family carries unit total weight sum |C|^2 = 1.
struct ThetaBranch {
  double theta = 0.0;
  Complex coefficient{1.0, 0.0};
  double action = 0.0;
};

// Uniform theta grid of n points with equal weights 1/sqrt(n).
std::vector<ThetaBranch> uniform_theta_family(std::size_t n);

// Stationary-phase weights of the two surviving pointer branches.
struct PointerPair {
  Complex c_up;    // weight attached to |up> e^{-i Lambda_up/hbar}
  Complex c_down;  // weight attached to |down> e^{-i Lambda_down/hbar}
  double lambda_gap = 0.0;  // Lambda_up - Lambda_down at the evaluation time
};

// Lambda_theta(t) = cos^2(theta) Lambda_up + sin^2(theta) Lambda_down.
double lambda_theta(const TwoStateModel& model, double theta, double t);

// cos(t1 - t2) * (1/T) int_0^T e^{-i(Lambda_t1 - Lambda_t2)/hbar} dt,
// closed form for constant rates, quadrature otherwise.
Complex theta_overlap_average(const TwoStateModel& model, double theta1,
                              double theta2, double T);

// hbar / |lambda_up - lambda_down|. Degenerate rates have no decoherence
// and raise a regime error.
double decoherence_time(const TwoStateModel& model);

// Endpoint stationary-phase reduction of the theta family at time t:
//   c_up   = C(0)    sqrt(+i pi hbar / (Lambda_up - Lambda_down)),
//   c_down = C(pi/2) sqrt(-i pi hbar / (Lambda_up - Lambda_down)),
// principal branch, so |c/C| = sqrt(pi hbar / |gap|) and the phases are
// +-pi/4 with the sign tied to the sign of the gap. Requires
// |gap| >= gap_threshold * hbar.
PointerPair saddle_point_reduce(const TwoStateModel& model,
                                const std::vector<ThetaBranch>& branches,
                                double t, double gap_threshold = 10.0);

// Discretized sum over the theta family,
//   sum_j C_j (cos t_j, sin t_j) e^{-i Lambda_j(t)/hbar} dmu_j,
// with the measure of the Bloch-sphere polar angle 2*theta (trapezoid
// weights). The up/down components converge to the pointer expression as
// the gap grows.
Eigen::Vector2cd theta_grid_sum(const TwoStateModel& model,
                                const std::vector<ThetaBranch>& branches,
                                double t);

// The two-term pointer expression assembled with its branch phases.
Eigen::Vector2cd pointer_expression(const TwoStateModel& model,
                                    const PointerPair& pair, double t);

// r(t) = e^{i (Lambda_up - Lambda_down)/hbar}, unit modulus.
Complex coherence_factor(const TwoStateModel& model, double t);

// Symmetric window average (1/2T) int_{-T}^{T} r dt = sinc of the phase
// gap. Modulus bounded by min(1, 2 hbar / (|gap rate| T)).
Complex coherence_factor_window_average(const TwoStateModel& model, double T);

struct NoncommutativeGrowth {
  Complex exact;      // <phi_+(t)| V |phi_-(t)> under evolution by h_phi
  Complex estimate;   // first-order i(t-t0)/(2 hbar) (V_- - V_+)(eps_up - eps_down)
  double difference;  // |exact - estimate|
};

// Requires V purely off-diagonal (and real) in the energy basis, so that
// |phi_+-> = (|up> +- |down>)/sqrt(2) are its eigenvectors.
NoncommutativeGrowth noncommutative_growth(const TwoStateModel& model,
                                           double t);

// Pure-dephasing composite realization on [2, env_dim]: the environment
// accumulates only branch phases, never a record.
HamiltonianSplit build_dephasing_composite(const TwoStateModel& model);

// (a|up> + b|down>) (x) |e_0>, normalized.
StateVector initial_composite_state(const TwoStateModel& model, Complex a,
                                    Complex b);

}  // namespace decosim
