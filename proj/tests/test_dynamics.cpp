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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "decosim/dynamics.hpp"
#include "support.hpp"

using namespace decosim;
namespace ts = testsupport;

namespace {

// 2 (x) 2 split with tunable interaction.
HamiltonianSplit make_split(const Matrix& sys, const Matrix& env,
                            const Matrix& h_int_full) {
  CompositeSpace s2({2});
  return HamiltonianSplit::build(OperatorMatrix(s2, sys, true),
                                 OperatorMatrix(s2, env, true),
                                 OperatorMatrix(CompositeSpace({2, 2}),
                                                h_int_full, true));
}

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("hamiltonian split validates the lifted structure") {
  std::mt19937_64 rng(1);
  Matrix sys = ts::random_hermitian(rng, 2);
  Matrix env = ts::random_hermitian(rng, 2);
  Matrix v = ts::random_hermitian(rng, 4);
  HamiltonianSplit h = make_split(sys, env, v);
  CHECK(h.space().total_dim() == 4);
  CHECK(h.n_sys() == 1);

  // An entangling "system" term must be rejected.
  CompositeSpace full({2, 2});
  OperatorMatrix bad(full, v, true);
  OperatorMatrix good_env = h.h_env();
  OperatorMatrix good_int = h.h_int();
  CHECK_THROWS_AS(HamiltonianSplit(bad, good_env, good_int, 1),
                  std::domain_error);
}

TEST_CASE("evolve_exact: stationary state picks up only a phase") {
  Matrix sys = diag2(1.0, -1.0);
  Matrix env = diag2(0.5, -0.5);
  HamiltonianSplit h = make_split(sys, env, Matrix::Zero(4, 4));
  Vector e0 = Vector::Zero(4);
  e0(0) = 1.0;  // eigenstate with E = 1.0 + 0.5
  StateVector psi0(CompositeSpace({2, 2}), e0);
  double t = 2.7;
  StateVector out = evolve_exact(h, psi0, t);
  Vector want = e0 * std::exp(Complex(0.0, -1.5 * t));
  CHECK((out.amplitudes() - want).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(out.time() == doctest::Approx(t));
}

TEST_CASE("evolve_exact: zero duration is the identity") {
  std::mt19937_64 rng(2);
  HamiltonianSplit h = make_split(ts::random_hermitian(rng, 2),
                                  ts::random_hermitian(rng, 2),
                                  ts::random_hermitian(rng, 4));
  Vector v = ts::random_unit_vector(rng, 4);
  StateVector psi0(CompositeSpace({2, 2}), v);
  StateVector out = evolve_exact(h, psi0, 0.0);
  CHECK((out.amplitudes() - v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("evolve_exact matches a brute-force RK4 oracle") {
  std::mt19937_64 rng(3);
  Matrix sys = ts::random_hermitian(rng, 2);
  Matrix env = ts::random_hermitian(rng, 2);
  Matrix v = ts::random_hermitian(rng, 4);
  HamiltonianSplit h = make_split(sys, env, v);
  Vector psi = ts::random_unit_vector(rng, 4);
  StateVector psi0(CompositeSpace({2, 2}), psi);

  double t = 1.3;
  StateVector out = evolve_exact(h, psi0, t);
  Vector oracle = ts::rk4_schrodinger_oracle(h.total().entries(), psi, t, 1e-5);
  CHECK((out.amplitudes() - oracle).cwiseAbs().maxCoeff() < 1e-7);

  // Norm and energy conservation along the trajectory.
  Complex e0 = expectation(h.total(), psi0);
  for (double tk : {0.3, 0.9, 2.4}) {
    StateVector st = evolve_exact(h, psi0, tk);
    CHECK(std::abs(st.amplitudes().norm() - 1.0) < 1e-10);
    Complex ek = expectation(h.total(), st);
    CHECK(std::abs(ek - e0) < 1e-9 * std::abs(e0) + 1e-12);
  }
}

TEST_CASE("evolve_exact RK4 fallback agrees with the spectral path") {
  std::mt19937_64 rng(4);
  HamiltonianSplit h = make_split(ts::random_hermitian(rng, 2),
                                  ts::random_hermitian(rng, 2),
                                  ts::random_hermitian(rng, 4));
  Vector psi = ts::random_unit_vector(rng, 4);
  StateVector psi0(CompositeSpace({2, 2}), psi);
  StateVector spectral = evolve_exact(h, psi0, 1.7);
  StateVector rk4 = evolve_exact(h, psi0, 1.7, 1.0, /*spectral_dim_cap=*/0);
  CHECK((spectral.amplitudes() - rk4.amplitudes()).cwiseAbs().maxCoeff() <
        1e-6);
}

TEST_CASE("coefficient ODE: free evolution leaves coefficients alone") {
  std::mt19937_64 rng(5);
  HamiltonianSplit h = make_split(ts::random_hermitian(rng, 2),
                                  ts::random_hermitian(rng, 2),
                                  Matrix::Zero(4, 4));
  std::vector<StateVector> basis;
  for (int k = 0; k < 4; ++k) {
    Vector e = Vector::Zero(4);
    e(k) = 1.0;
    basis.emplace_back(CompositeSpace({2, 2}), e);
  }
  Eigen::VectorXcd c(4);
  c << 0.5, 0.5, 0.5, 0.5;
  CoefficientStep step = coefficient_ode_step(h, basis, c, 0.0, 0.01);
  CHECK((step.coeffs - c).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coefficient ODE: diagonal interaction gives pure phases") {
  // h0 and h_int diagonal, so the computational basis is a joint eigenbasis.
  Matrix sys = diag2(1.0, -0.3);
  Matrix env = diag2(0.2, 0.7);
  Eigen::Vector4d lambda(0.9, -0.4, 0.3, 1.4);
  Matrix v = Matrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) v(k, k) = lambda(k);
  HamiltonianSplit h = make_split(sys, env, v);

  std::vector<StateVector> basis;
  for (int k = 0; k < 4; ++k) {
    Vector e = Vector::Zero(4);
    e(k) = 1.0;
    basis.emplace_back(CompositeSpace({2, 2}), e);
  }
  Eigen::VectorXcd c(4);
  c << 0.5, 0.5, 0.5, 0.5;
  Eigen::VectorXcd c0 = c;

  const double dt = 1e-3;
  const int steps = 1000;
  double t = 0.0;
  for (int s = 0; s < steps; ++s) {
    CoefficientStep step = coefficient_ode_step(h, basis, c, t, dt);
    basis = std::move(step.basis);
    c = std::move(step.coeffs);
    t += dt;
  }
  for (int k = 0; k < 4; ++k) {
    Complex want = c0(k) * std::exp(Complex(0.0, -lambda(k) * t));
    CHECK(std::abs(c(k) - want) < 1e-8);
  }
}

TEST_CASE("coefficient ODE: norm drift stays tiny for random interactions") {
  std::mt19937_64 rng(6);
  HamiltonianSplit h = make_split(ts::random_hermitian(rng, 2),
                                  ts::random_hermitian(rng, 2),
                                  ts::random_hermitian(rng, 4));
  std::vector<StateVector> basis;
  for (int k = 0; k < 4; ++k) {
    Vector e = Vector::Zero(4);
    e(k) = 1.0;
    basis.emplace_back(CompositeSpace({2, 2}), e);
  }
  Eigen::VectorXcd c = ts::random_unit_vector(rng, 4);
  const double dt = 1e-3;
  double t = 0.0;
  for (int s = 0; s < 1000; ++s) {
    CoefficientStep step = coefficient_ode_step(h, basis, c, t, dt);
    basis = std::move(step.basis);
    c = std::move(step.coeffs);
    t += dt;
  }
  CHECK(std::abs(c.norm() - 1.0) < 1e-8);
}

TEST_CASE("coefficient ODE rejects a non-orthonormal basis") {
  std::mt19937_64 rng(7);
  HamiltonianSplit h = make_split(ts::random_hermitian(rng, 2),
                                  ts::random_hermitian(rng, 2),
                                  ts::random_hermitian(rng, 4));
  Vector a = ts::random_unit_vector(rng, 4);
  std::vector<StateVector> basis{StateVector(CompositeSpace({2, 2}), a),
                                 StateVector(CompositeSpace({2, 2}), a)};
  Eigen::VectorXcd c(2);
  c << 1.0, 0.0;
  CHECK_THROWS_AS(coefficient_ode_step(h, basis, c, 0.0, 0.01),
                  std::domain_error);
}

TEST_CASE("phase approx: zero interaction reduces to free evolution") {
  std::mt19937_64 rng(8);
  Matrix sys = ts::random_hermitian(rng, 2);
  Matrix env = ts::random_hermitian(rng, 2);
  HamiltonianSplit h = make_split(sys, env, Matrix::Zero(4, 4));
  Vector v = ts::random_unit_vector(rng, 4);
  std::vector<BranchState> branches{{StateVector(CompositeSpace({2, 2}), v),
                                     0.0,
                                     {1.0, 0.0}}};
  double t = 1.9;
  auto out = evolve_phase_approx(h, branches, t);
  CHECK(out[0].action == 0.0);
  StateVector free = evolve_exact(h, branches[0].base, t);
  CHECK((assemble_branches(out).amplitudes() - free.amplitudes())
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("phase approx is exact in the ideal-measurement case") {
  // [h_sys + h_env, h_int] = 0 with joint-eigenstate branches.
  std::mt19937_64 rng(9);
  Matrix u2a = ts::random_unitary(rng, 2);
  Matrix u2b = ts::random_unitary(rng, 2);
  Eigen::Vector2d es(0.8, -0.5), ee(0.3, 1.1);
  Matrix sys = u2a * es.cast<Complex>().asDiagonal() * u2a.adjoint();
  Matrix env = u2b * ee.cast<Complex>().asDiagonal() * u2b.adjoint();
  // h_int diagonal in the same product eigenbasis.
  Matrix u4 = ts::kron_oracle(u2a, u2b);
  Eigen::Vector4d lam(1.3, -0.2, 0.6, 0.9);
  Matrix v = u4 * lam.cast<Complex>().asDiagonal() * u4.adjoint();
  v = 0.5 * (v + v.adjoint().eval());
  HamiltonianSplit h = make_split(sys, env, v);

  std::vector<BranchState> branches;
  Eigen::Vector4cd weights(0.5, Complex(0.0, 0.5), 0.5, 0.5);
  for (int k = 0; k < 4; ++k) {
    branches.push_back(
        {StateVector(CompositeSpace({2, 2}), u4.col(k)), 0.0, weights(k)});
  }
  StateVector psi0 = assemble_branches(branches);

  for (double t : {0.5, 3.0, 10.0}) {
    auto evolved = evolve_phase_approx(h, branches, t);
    StateVector approx = assemble_branches(evolved);
    StateVector exact = evolve_exact(h, psi0, t);
    CHECK(fidelity(approx, exact) >= 1.0 - 1e-9);
    branches = std::move(evolved);  // continue from where we stopped
    psi0 = exact;
  }
}

TEST_CASE("phase approx: constant interaction expectation integrates exactly") {
  Matrix sys = diag2(0.7, -0.7);
  Matrix env = diag2(0.1, 0.4);
  Eigen::Vector4d lam(2.0, 2.0, -1.0, -1.0);
  Matrix v = Matrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) v(k, k) = lam(k);
  HamiltonianSplit h = make_split(sys, env, v);
  Vector e0 = Vector::Zero(4);
  e0(0) = 1.0;
  Vector e2 = Vector::Zero(4);
  e2(2) = 1.0;
  std::vector<BranchState> branches{
      {StateVector(CompositeSpace({2, 2}), e0), 0.0, {1.0, 0.0}},
      {StateVector(CompositeSpace({2, 2}), e2), 0.0, {0.0, 0.0}}};
  double t = 3.7;
  auto out = evolve_phase_approx(h, branches, t);
  CHECK(std::abs(out[0].action - 2.0 * t) < 1e-10);
  CHECK(std::abs(out[1].action - (-1.0) * t) < 1e-10);
}

TEST_CASE("phase approx rejects non-orthogonal branch bases") {
  std::mt19937_64 rng(10);
  HamiltonianSplit h = make_split(ts::random_hermitian(rng, 2),
                                  ts::random_hermitian(rng, 2),
                                  ts::random_hermitian(rng, 4));
  Vector a = ts::random_unit_vector(rng, 4);
  std::vector<BranchState> branches{
      {StateVector(CompositeSpace({2, 2}), a), 0.0, {1.0, 0.0}},
      {StateVector(CompositeSpace({2, 2}), a), 0.0, {1.0, 0.0}}};
  CHECK_THROWS_AS(evolve_phase_approx(h, branches, 1.0), std::domain_error);
}

TEST_CASE("mean field: zero interaction means zero action") {
  std::mt19937_64 rng(11);
  HamiltonianSplit h = make_split(ts::random_hermitian(rng, 2),
                                  ts::random_hermitian(rng, 2),
                                  Matrix::Zero(4, 4));
  Vector v = ts::random_unit_vector(rng, 4);
  StateVector psi0(CompositeSpace({2, 2}), v);
  auto [state, acc] = evolve_mean_field(h, psi0, 2.0, 0.01);
  CHECK(acc.value() == 0.0);
  StateVector free = evolve_exact(h, psi0, 2.0);
  CHECK((state.amplitudes() - free.amplitudes()).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("mean field: commuting eigenstate accumulates v*t") {
  Matrix sys = diag2(0.9, -0.9);
  Matrix env = diag2(0.2, -0.1);
  Eigen::Vector4d lam(1.7, 0.0, 0.0, 0.0);
  Matrix v = Matrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) v(k, k) = lam(k);
  HamiltonianSplit h = make_split(sys, env, v);
  Vector e0 = Vector::Zero(4);
  e0(0) = 1.0;
  StateVector psi0(CompositeSpace({2, 2}), e0);
  double t = 4.2;
  auto [state, acc] = evolve_mean_field(h, psi0, t, 0.001);
  CHECK(std::abs(acc.value() - 1.7 * t) < 1e-9);
  CHECK(std::abs(state.amplitudes().norm() - 1.0) < 1e-10);
  // Equal to exact evolution for a joint eigenstate (phase included).
  StateVector exact = evolve_exact(h, psi0, t);
  CHECK(fidelity(state, exact) >= 1.0 - 1e-9);
  CHECK((state.amplitudes() - exact.amplitudes()).cwiseAbs().maxCoeff() <
        1e-6);
}

TEST_CASE("mean field: base overlap of two runs is constant in time") {
  std::mt19937_64 rng(12);
  HamiltonianSplit h = make_split(ts::random_hermitian(rng, 2),
                                  ts::random_hermitian(rng, 2),
                                  ts::random_hermitian(rng, 4));
  Vector a = ts::random_unit_vector(rng, 4);
  Vector b = (a + 0.4 * ts::random_unit_vector(rng, 4)).normalized();
  StateVector sa(CompositeSpace({2, 2}), a);
  StateVector sb(CompositeSpace({2, 2}), b);
  double base_overlap = std::abs(overlap(sa, sb));
  CHECK(base_overlap > 0.1);  // genuinely non-orthogonal
  for (double t : {0.7, 1.9, 4.1}) {
    auto ra = evolve_mean_field(h, sa, t, 0.01);
    auto rb = evolve_mean_field(h, sb, t, 0.01);
    // The phases differ, the base overlap modulus does not.
    CHECK(std::abs(std::abs(overlap(ra.state, rb.state)) - base_overlap) <
          1e-9);
  }
}

TEST_CASE("branch overlap time average: identical branches give exactly 1") {
  std::mt19937_64 rng(13);
  Vector v = ts::random_unit_vector(rng, 4);
  BranchTrajectory traj;
  for (int k = 0; k <= 10; ++k) {
    traj.times.push_back(0.1 * k);
    traj.samples.push_back(
        {StateVector(CompositeSpace({2, 2}), v, 0.1 * k), 0.3 * k, {1.0, 0.0}});
  }
  Complex avg = branch_overlap_time_average(traj, traj, 1.0);
  CHECK(std::abs(avg - Complex(1.0)) < 1e-15);
}

TEST_CASE("branch overlap time average matches the closed form") {
  // Constant base overlap c, linear action difference.
  Vector b1 = Vector::Zero(2), mix(2);
  b1 << 1.0, 0.0;
  double c = 0.6;
  mix << c, std::sqrt(1.0 - c * c);
  StateVector s1(CompositeSpace({2}), b1);
  StateVector s2(CompositeSpace({2}), mix);

  double dlam = 2.0, T = 10.0;
  const int n = 4000;
  BranchTrajectory t1, t2;
  for (int k = 0; k <= n; ++k) {
    double t = T * k / n;
    t1.times.push_back(t);
    t2.times.push_back(t);
    t1.samples.push_back({StateVector(s1.space(), b1, t), dlam * t, {1.0, 0.0}});
    t2.samples.push_back({StateVector(s2.space(), mix, t), 0.0, {1.0, 0.0}});
  }
  Complex avg = branch_overlap_time_average(t1, t2, T);
  Complex want = c * (std::exp(Complex(0.0, dlam * T)) - 1.0) /
                 Complex(0.0, dlam * T);
  CHECK(std::abs(avg - want) < 1e-4);
  CHECK(std::abs(avg) <= 2.0 * c / (dlam * T) + 1e-4);

  // Degenerate actions: plain overlap, no decay.
  BranchTrajectory t3 = t2;
  Complex flat = branch_overlap_time_average(t2, t3, T);
  CHECK(std::abs(flat - Complex(1.0)) < 1e-12);

  BranchTrajectory short_grid = t1;
  short_grid.times.pop_back();
  short_grid.samples.pop_back();
  CHECK_THROWS_AS(branch_overlap_time_average(short_grid, t2, T),
                  std::domain_error);
}

TEST_CASE("action accumulator bookkeeping") {
  ActionAccumulator acc;
  acc.add(0.0, 1.0);
  CHECK(acc.value() == 0.0);
  acc.add(1.0, 1.0);
  CHECK(acc.value() == doctest::Approx(1.0));
  CHECK(acc.monotone_nondecreasing());
  acc.add(2.0, -3.0);
  CHECK_FALSE(acc.monotone_nondecreasing());
  CHECK_THROWS_AS(acc.add(1.5, 0.0), std::domain_error);
}

TEST_CASE("default step obeys the max|H| dt <= 0.05 rule") {
  std::mt19937_64 rng(14);
  Matrix v = ts::random_hermitian(rng, 4, 3.0);
  HamiltonianSplit h = make_split(ts::random_hermitian(rng, 2),
                                  ts::random_hermitian(rng, 2), v);
  double dt = default_step(h);
  double norm = h.total().entries().cwiseAbs().rowwise().sum().maxCoeff();
  CHECK(norm * dt <= 0.05 + 1e-12);
}
