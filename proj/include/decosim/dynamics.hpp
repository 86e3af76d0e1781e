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

#include <utility>
#include <vector>

#include "decosim/hilbert.hpp"

namespace decosim {

// System + environment + interaction, all lifted to one composite space.
// The leading `n_sys` subsystems form the system; the rest the environment.
// h_sys must act as identity on the environment factors and h_env on the
// system factors (checked structurally at construction).
class HamiltonianSplit {
 public:
  HamiltonianSplit(OperatorMatrix h_sys, OperatorMatrix h_env,
                   OperatorMatrix h_int, std::size_t n_sys);

  // Lift local system/environment terms into their joined space.
  static HamiltonianSplit build(const OperatorMatrix& sys_local,
                                const OperatorMatrix& env_local,
                                const OperatorMatrix& h_int_full);

  const OperatorMatrix& h_sys() const { return h_sys_; }
  const OperatorMatrix& h_env() const { return h_env_; }
  const OperatorMatrix& h_int() const { return h_int_; }
  const CompositeSpace& space() const { return h_sys_.space(); }
  std::size_t n_sys() const { return n_sys_; }

  OperatorMatrix total() const;
  OperatorMatrix free_part() const;  // h_sys + h_env

 private:
  OperatorMatrix h_sys_;
  OperatorMatrix h_env_;
  OperatorMatrix h_int_;
  std::size_t n_sys_;
};

// One member of a product-form expansion: an unperturbed vector, its
// accumulated interaction action Lambda(t), and the frozen coefficient.
struct BranchState {
  StateVector base;
  double action = 0.0;
  Complex coefficient{1.0, 0.0};
};

// Running trapezoid integral of the interaction-energy expectation.
// Times must be strictly increasing; the value at the first sample is 0.
class ActionAccumulator {
 public:
  void add(double t, double interaction_energy);

  double value() const { return value_; }
  bool empty() const { return samples_.empty(); }
  // False as soon as the running value has ever decreased. The engines do
  // not enforce monotone actions; runs that violate it are reported, not
  // aborted.
  bool monotone_nondecreasing() const { return monotone_; }
  const std::vector<std::pair<double, double>>& samples() const {
    return samples_;
  }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<std::pair<double, double>> samples_;
  std::vector<double> values_;
  double value_ = 0.0;
  bool monotone_ = true;
};

// Cached e^{-iHt/hbar} built from one spectral decomposition.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const OperatorMatrix& h, double hbar = 1.0);

  Vector apply_raw(const Vector& v, double dt) const;
  StateVector apply(const StateVector& psi, double dt) const;

  const SpectralDecomposition& decomposition() const { return eig_; }

 private:
  CompositeSpace space_;
  SpectralDecomposition eig_;
  double hbar_;
};

inline constexpr std::size_t kSpectralDimCap = 512;

// Exact unitary evolution e^{-iHt/hbar} psi0 with H = h_sys + h_env + h_int.
// Spectral propagation up to total_dim `spectral_dim_cap`, fixed-step RK4
// with per-step renormalization above.
StateVector evolve_exact(const HamiltonianSplit& h, const StateVector& psi0,
                         double t, double hbar = 1.0,
                         std::size_t spectral_dim_cap = kSpectralDimCap);

// Engine step size: max|H| * dt <= 0.05 (infinity norm).
double default_step(const HamiltonianSplit& h, double hbar = 1.0);

struct CoefficientStep {
  std::vector<StateVector> basis;
  Eigen::VectorXcd coeffs;
};

// One RK4 step of the interaction-picture coefficient equation
//   i hbar dC_n/dt = sum_n' C_n' <b_n(t)|h_int|b_n'(t)>,
// co-evolving the orthonormal basis under h_sys + h_env.
CoefficientStep coefficient_ode_step(const HamiltonianSplit& h,
                                     const std::vector<StateVector>& basis,
                                     const Eigen::VectorXcd& coeffs, double t,
                                     double dt, double hbar = 1.0);

// Diagonal-phase evolution: each base advances under h_sys + h_env only,
// each action accumulates the trapezoid integral of <base|h_int|base>,
// coefficients stay fixed. `duration` counts from the branches' current
// base time; dt <= 0 selects default_step.
std::vector<BranchState> evolve_phase_approx(
    const HamiltonianSplit& h, const std::vector<BranchState>& branches,
    double duration, double dt = 0.0, double hbar = 1.0);

struct MeanFieldResult {
  StateVector state;  // |Phi_0(t)> e^{-i Lambda/hbar}
  ActionAccumulator action;
};

// Mean-field evolution: base under h_sys + h_env, the accumulated
// interaction-energy expectation applied as a global phase. The expectation
// is taken on the base; the phase factor cancels out of it.
MeanFieldResult evolve_mean_field(const HamiltonianSplit& h,
                                  const StateVector& psi0, double duration,
                                  double dt, double hbar = 1.0);

// Branch sampled on a time grid (base, action and coefficient per sample).
struct BranchTrajectory {
  std::vector<double> times;
  std::vector<BranchState> samples;
};

// Record a phase-approx trajectory at the given sample times. The first
// sample time must equal the branch's current base time.
BranchTrajectory sample_phase_approx(const HamiltonianSplit& h,
                                     const BranchState& branch,
                                     const std::vector<double>& times,
                                     double dt = 0.0, double hbar = 1.0);

// (1/T) integral of <Phi(t)|Phi'(t)> over the common grid, phase factors
// e^{i(Lambda - Lambda')/hbar} included, trapezoid quadrature. T must match
// the grid span.
Complex branch_overlap_time_average(const BranchTrajectory& b1,
                                    const BranchTrajectory& b2, double T,
                                    double hbar = 1.0);

// Sum of coefficient * e^{-i action/hbar} * base over branches, normalized.
StateVector assemble_branches(const std::vector<BranchState>& branches,
                              double hbar = 1.0);

}  // namespace decosim
