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

#include "decosim/dynamics.hpp"

#include <cmath>

namespace decosim {

namespace {

constexpr double kStructureTol = 1e-12;
constexpr double kOrthoTol = 1e-8;

std::size_t leading_dim(const CompositeSpace& space, std::size_t n_sys) {
  std::size_t d = 1;
  for (std::size_t k = 0; k < n_sys; ++k) d *= space.dims()[k];
  return d;
}

// Check H = M (x) I_env (when lead=true) or H = I_sys (x) M (lead=false)
// by contracting out the identity factor and comparing.
bool factors_with_identity(const Matrix& h, std::size_t d_sys,
                           std::size_t d_env, bool lead) {
  const auto ds = static_cast<Eigen::Index>(d_sys);
  const auto de = static_cast<Eigen::Index>(d_env);
  if (lead) {
    Matrix m = Matrix::Zero(ds, ds);
    for (Eigen::Index a = 0; a < ds; ++a) {
      for (Eigen::Index b = 0; b < ds; ++b) {
        Complex sum = 0.0;
        for (Eigen::Index e = 0; e < de; ++e) {
          sum += h(a * de + e, b * de + e);
        }
        m(a, b) = sum / static_cast<double>(d_env);
      }
    }
    for (Eigen::Index a = 0; a < ds; ++a) {
      for (Eigen::Index b = 0; b < ds; ++b) {
        for (Eigen::Index e = 0; e < de; ++e) {
          for (Eigen::Index f = 0; f < de; ++f) {
            Complex want = (e == f) ? m(a, b) : Complex(0.0);
            if (std::abs(h(a * de + e, b * de + f) - want) > kStructureTol) {
              return false;
            }
          }
        }
      }
    }
    return true;
  }
  Matrix m = Matrix::Zero(de, de);
  for (Eigen::Index e = 0; e < de; ++e) {
    for (Eigen::Index f = 0; f < de; ++f) {
      Complex sum = 0.0;
      for (Eigen::Index a = 0; a < ds; ++a) {
        sum += h(a * de + e, a * de + f);
      }
      m(e, f) = sum / static_cast<double>(d_sys);
    }
  }
  for (Eigen::Index a = 0; a < ds; ++a) {
    for (Eigen::Index b = 0; b < ds; ++b) {
      for (Eigen::Index e = 0; e < de; ++e) {
        for (Eigen::Index f = 0; f < de; ++f) {
          Complex want = (a == b) ? m(e, f) : Complex(0.0);
          if (std::abs(h(a * de + e, b * de + f) - want) > kStructureTol) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

double infinity_norm(const Matrix& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double real_expectation(const Matrix& op, const Vector& v) {
  return std::real(v.dot(op * v));
}

}  // namespace

HamiltonianSplit::HamiltonianSplit(OperatorMatrix h_sys, OperatorMatrix h_env,
                                   OperatorMatrix h_int, std::size_t n_sys)
    : h_sys_(std::move(h_sys)),
      h_env_(std::move(h_env)),
      h_int_(std::move(h_int)),
      n_sys_(n_sys) {
  if (h_sys_.space() != h_env_.space() || h_sys_.space() != h_int_.space()) {
    throw std::domain_error("HamiltonianSplit: parts live on different spaces");
  }
  if (!h_sys_.is_hermitian() || !h_env_.is_hermitian() ||
      !h_int_.is_hermitian()) {
    throw std::domain_error("HamiltonianSplit: all parts must be hermitian");
  }
  if (n_sys_ == 0 || n_sys_ > space().subsystem_count()) {
    throw std::domain_error("HamiltonianSplit: invalid system subsystem count");
  }
  const std::size_t d_sys = leading_dim(space(), n_sys_);
  const std::size_t d_env = space().total_dim() / d_sys;
  if (d_env > 1 && !factors_with_identity(h_sys_.entries(), d_sys, d_env, true)) {
    throw std::domain_error(
        "HamiltonianSplit: h_sys does not act as identity on the environment");
  }
  if (d_sys > 1 && d_env > 1 &&
      !factors_with_identity(h_env_.entries(), d_sys, d_env, false)) {
    throw std::domain_error(
        "HamiltonianSplit: h_env does not act as identity on the system");
  }
}

HamiltonianSplit HamiltonianSplit::build(const OperatorMatrix& sys_local,
                                         const OperatorMatrix& env_local,
                                         const OperatorMatrix& h_int_full) {
  CompositeSpace full =
      CompositeSpace::joined(sys_local.space(), env_local.space());
  if (h_int_full.space() != full) {
    throw std::domain_error("HamiltonianSplit::build: h_int space mismatch");
  }
  OperatorMatrix h_sys =
      tensor_product(sys_local, OperatorMatrix::identity(env_local.space()));
  OperatorMatrix h_env =
      tensor_product(OperatorMatrix::identity(sys_local.space()), env_local);
  return HamiltonianSplit(
      OperatorMatrix(full, h_sys.entries(), true),
      OperatorMatrix(full, h_env.entries(), true), h_int_full,
      sys_local.space().subsystem_count());
}

OperatorMatrix HamiltonianSplit::total() const {
  return OperatorMatrix(
      space(), h_sys_.entries() + h_env_.entries() + h_int_.entries(), true);
}

OperatorMatrix HamiltonianSplit::free_part() const {
  return OperatorMatrix(space(), h_sys_.entries() + h_env_.entries(), true);
}

void ActionAccumulator::add(double t, double interaction_energy) {
  if (!std::isfinite(t) || !std::isfinite(interaction_energy)) {
    throw std::domain_error("ActionAccumulator: non-finite sample");
  }
  if (!samples_.empty()) {
    const auto& [t_prev, e_prev] = samples_.back();
    if (t <= t_prev) {
      throw std::domain_error("ActionAccumulator: times must strictly increase");
    }
    double inc = 0.5 * (t - t_prev) * (e_prev + interaction_energy);
    if (inc < 0.0) monotone_ = false;
    value_ += inc;
  }
  samples_.emplace_back(t, interaction_energy);
  values_.push_back(value_);
}

SpectralPropagator::SpectralPropagator(const OperatorMatrix& h, double hbar)
    : space_(h.space()), eig_(spectral_decompose(h)), hbar_(hbar) {
  if (hbar <= 0.0) {
    throw std::domain_error("SpectralPropagator: hbar must be positive");
  }
}

Vector SpectralPropagator::apply_raw(const Vector& v, double dt) const {
  Vector in_eig = eig_.eigenvectors.adjoint() * v;
  for (Eigen::Index k = 0; k < in_eig.size(); ++k) {
    in_eig(k) *= std::exp(Complex(0.0, -eig_.eigenvalues(k) * dt / hbar_));
  }
  return eig_.eigenvectors * in_eig;
}

StateVector SpectralPropagator::apply(const StateVector& psi, double dt) const {
  if (psi.space() != space_) {
    throw std::domain_error("SpectralPropagator: state space mismatch");
  }
  return StateVector::normalized(space_, apply_raw(psi.amplitudes(), dt),
                                 psi.time() + dt);
}

double default_step(const HamiltonianSplit& h, double hbar) {
  double scale = infinity_norm(h.total().entries());
  if (scale <= 0.0) return 1.0;
  return 0.05 * hbar / scale;
}

StateVector evolve_exact(const HamiltonianSplit& h, const StateVector& psi0,
                         double t, double hbar, std::size_t spectral_dim_cap) {
  if (psi0.space() != h.space()) {
    throw std::domain_error("evolve_exact: state space mismatch");
  }
  if (t < 0.0) {
    throw std::domain_error("evolve_exact: negative duration");
  }
  if (t == 0.0) return psi0;
  OperatorMatrix total = h.total();
  if (h.space().total_dim() <= spectral_dim_cap) {
    return SpectralPropagator(total, hbar).apply(psi0, t);
  }
  // RK4 on i hbar dpsi/dt = H psi, renormalized every step.
  double dt = default_step(h, hbar);
  const auto n = static_cast<std::size_t>(std::ceil(t / dt));
  dt = (n > 0) ? t / static_cast<double>(n) : 0.0;
  const Matrix& H = total.entries();
  const Complex scale(0.0, -1.0 / hbar);
  Vector psi = psi0.amplitudes();
  Vector k1(psi.size()), k2(psi.size()), k3(psi.size()), k4(psi.size());
  for (std::size_t s = 0; s < n; ++s) {
    k1.noalias() = H * psi;
    k1 *= scale;
    k2.noalias() = H * (psi + 0.5 * dt * k1);
    k2 *= scale;
    k3.noalias() = H * (psi + 0.5 * dt * k2);
    k3 *= scale;
    k4.noalias() = H * (psi + dt * k3);
    k4 *= scale;
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    psi /= psi.norm();
  }
  return StateVector(h.space(), std::move(psi), psi0.time() + t);
}

CoefficientStep coefficient_ode_step(const HamiltonianSplit& h,
                                     const std::vector<StateVector>& basis,
                                     const Eigen::VectorXcd& coeffs, double t,
                                     double dt, double hbar) {
  if (basis.empty() ||
      static_cast<Eigen::Index>(basis.size()) != coeffs.size()) {
    throw std::domain_error("coefficient_ode_step: basis/coefficient size mismatch");
  }
  if (dt <= 0.0) {
    throw std::domain_error("coefficient_ode_step: dt must be positive");
  }
  const std::size_t n = basis.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex g = overlap(basis[i], basis[j]);
      double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - want) > kOrthoTol) {
        throw std::domain_error("coefficient_ode_step: basis not orthonormal");
      }
    }
  }

  SpectralPropagator free_prop(h.free_part(), hbar);
  const Matrix& v = h.h_int().entries();

  auto interaction_matrix = [&](const std::vector<Vector>& vecs) {
    Matrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      Vector col = v * vecs[j];
      for (std::size_t i = 0; i < n; ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            vecs[i].dot(col);
      }
    }
    return m;
  };

  std::vector<Vector> at_t, at_half, at_full;
  at_t.reserve(n);
  at_half.reserve(n);
  at_full.reserve(n);
  for (const auto& b : basis) at_t.push_back(b.amplitudes());
  for (const auto& b : at_t) at_half.push_back(free_prop.apply_raw(b, dt / 2));
  for (const auto& b : at_half) at_full.push_back(free_prop.apply_raw(b, dt / 2));

  Matrix m0 = interaction_matrix(at_t);
  Matrix mh = interaction_matrix(at_half);
  Matrix m1 = interaction_matrix(at_full);
  const Complex scale(0.0, -1.0 / hbar);

  Eigen::VectorXcd k1 = scale * (m0 * coeffs);
  Eigen::VectorXcd k2 = scale * (mh * (coeffs + 0.5 * dt * k1));
  Eigen::VectorXcd k3 = scale * (mh * (coeffs + 0.5 * dt * k2));
  Eigen::VectorXcd k4 = scale * (m1 * (coeffs + dt * k3));

  CoefficientStep out;
  out.coeffs = coeffs + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  out.basis.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.basis.push_back(StateVector::normalized(h.space(), at_full[i], t + dt));
  }
  return out;
}

std::vector<BranchState> evolve_phase_approx(
    const HamiltonianSplit& h, const std::vector<BranchState>& branches,
    double duration, double dt, double hbar) {
  if (branches.empty()) return {};
  if (duration < 0.0) {
    throw std::domain_error("evolve_phase_approx: negative duration");
  }
  for (std::size_t i = 0; i < branches.size(); ++i) {
    if (!std::isfinite(branches[i].action)) {
      throw std::domain_error("evolve_phase_approx: non-finite action");
    }
    for (std::size_t j = i + 1; j < branches.size(); ++j) {
      if (std::abs(overlap(branches[i].base, branches[j].base)) > kOrthoTol) {
        throw std::domain_error(
            "evolve_phase_approx: branch bases not mutually orthogonal");
      }
    }
  }
  if (dt <= 0.0) dt = default_step(h, hbar);
  const auto n = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(duration / dt)));
  dt = duration / static_cast<double>(n);

  SpectralPropagator free_prop(h.free_part(), hbar);
  const Matrix& v = h.h_int().entries();

  std::vector<BranchState> out = branches;
  if (duration == 0.0) return out;
  for (auto& br : out) {
    Vector amp = br.base.amplitudes();
    double f_prev = real_expectation(v, amp);
    double action = br.action;
    for (std::size_t s = 0; s < n; ++s) {
      amp = free_prop.apply_raw(amp, dt);
      double f_next = real_expectation(v, amp);
      action += 0.5 * dt * (f_prev + f_next);
      f_prev = f_next;
    }
    br.base = StateVector::normalized(h.space(), std::move(amp),
                                      br.base.time() + duration);
    br.action = action;
  }
  return out;
}

MeanFieldResult evolve_mean_field(const HamiltonianSplit& h,
                                  const StateVector& psi0, double duration,
                                  double dt, double hbar) {
  if (dt <= 0.0) {
    throw std::domain_error("evolve_mean_field: dt must be positive");
  }
  if (duration < 0.0) {
    throw std::domain_error("evolve_mean_field: negative duration");
  }
  SpectralPropagator free_prop(h.free_part(), hbar);
  const Matrix& v = h.h_int().entries();
  const auto n = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(duration / dt)));
  dt = (duration > 0.0) ? duration / static_cast<double>(n) : 0.0;

  Vector amp = psi0.amplitudes();
  ActionAccumulator acc;
  acc.add(psi0.time(), real_expectation(v, amp));
  if (duration > 0.0) {
    for (std::size_t s = 0; s < n; ++s) {
      amp = free_prop.apply_raw(amp, dt);
      acc.add(psi0.time() + static_cast<double>(s + 1) * dt,
              real_expectation(v, amp));
    }
  }
  Vector phased = amp * std::exp(Complex(0.0, -acc.value() / hbar));
  return MeanFieldResult{
      StateVector::normalized(h.space(), std::move(phased),
                              psi0.time() + duration),
      std::move(acc)};
}

BranchTrajectory sample_phase_approx(const HamiltonianSplit& h,
                                     const BranchState& branch,
                                     const std::vector<double>& times,
                                     double dt, double hbar) {
  if (times.empty()) {
    throw std::domain_error("sample_phase_approx: empty time grid");
  }
  if (std::abs(times.front() - branch.base.time()) > 1e-12) {
    throw std::domain_error(
        "sample_phase_approx: grid must start at the branch time");
  }
  BranchTrajectory traj;
  traj.times = times;
  traj.samples.push_back(branch);
  std::vector<BranchState> current{branch};
  for (std::size_t k = 1; k < times.size(); ++k) {
    double span = times[k] - times[k - 1];
    if (span <= 0.0) {
      throw std::domain_error("sample_phase_approx: times must increase");
    }
    current = evolve_phase_approx(h, current, span, dt, hbar);
    traj.samples.push_back(current.front());
  }
  return traj;
}

Complex branch_overlap_time_average(const BranchTrajectory& b1,
                                    const BranchTrajectory& b2, double T,
                                    double hbar) {
  const std::size_t n = b1.times.size();
  if (n < 2 || b2.times.size() != n) {
    throw std::domain_error("branch_overlap_time_average: mismatched grids");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(b1.times[k] - b2.times[k]) > 1e-12) {
      throw std::domain_error("branch_overlap_time_average: mismatched grids");
    }
  }
  double span = b1.times.back() - b1.times.front();
  if (std::abs(span - T) > 1e-9 * std::max(1.0, std::abs(T))) {
    throw std::domain_error(
        "branch_overlap_time_average: grid span does not match T");
  }
  auto integrand = [&](std::size_t k) {
    Complex g = overlap(b1.samples[k].base, b2.samples[k].base);
    double dl = b1.samples[k].action - b2.samples[k].action;
    return g * std::exp(Complex(0.0, dl / hbar));
  };
  Complex acc = 0.0;
  Complex f_prev = integrand(0);
  for (std::size_t k = 1; k < n; ++k) {
    Complex f_next = integrand(k);
    acc += 0.5 * (b1.times[k] - b1.times[k - 1]) * (f_prev + f_next);
    f_prev = f_next;
  }
  return acc / T;
}

StateVector assemble_branches(const std::vector<BranchState>& branches,
                              double hbar) {
  if (branches.empty()) {
    throw std::domain_error("assemble_branches: no branches");
  }
  Vector sum = Vector::Zero(branches.front().base.amplitudes().size());
  for (const auto& br : branches) {
    sum += br.coefficient * std::exp(Complex(0.0, -br.action / hbar)) *
           br.base.amplitudes();
  }
  return StateVector::normalized(branches.front().base.space(), std::move(sum),
                                 branches.front().base.time());
}

}  // namespace decosim
