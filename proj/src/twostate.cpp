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

#include "decosim/twostate.hpp"

#include <cmath>
#include <numbers>

namespace decosim {

namespace {

constexpr double kPi = std::numbers::pi;

void check_theta(double theta) {
  if (theta < -1e-12 || theta > kPi / 2 + 1e-12) {
    throw std::domain_error("theta outside [0, pi/2]");
  }
}

double v_scale(const TwoStateModel& m) {
  return std::max(
      {std::abs(m.eps_up), std::abs(m.eps_down), max_abs(m.v_matrix), 1e-12});
}

// <phi_theta(tau)|V|phi_theta(tau)> with phi_theta evolved under h_phi
// from t0; the eigenstate populations are frozen, only the cross term
// oscillates.
double theta_expectation(const TwoStateModel& m, double theta, double tau) {
  double c = std::cos(theta), s = std::sin(theta);
  Complex cross = m.v_matrix(0, 1) *
                  std::exp(Complex(0.0, (m.eps_up - m.eps_down) * tau / m.hbar));
  return c * c * m.v_matrix(0, 0).real() + s * s * m.v_matrix(1, 1).real() +
         2.0 * c * s * cross.real();
}

double integrate_theta_action(const TwoStateModel& m, double theta,
                              double t_from, double t_to) {
  double span = t_to - t_from;
  if (span == 0.0) return 0.0;
  double dt = 0.05 * m.hbar / v_scale(m);
  auto n = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(std::abs(span) / dt)));
  dt = span / static_cast<double>(n);
  double acc = 0.0;
  double f_prev = theta_expectation(m, theta, t_from - m.t0);
  for (std::size_t k = 1; k <= n; ++k) {
    double f_next =
        theta_expectation(m, theta, t_from - m.t0 + static_cast<double>(k) * dt);
    acc += 0.5 * dt * (f_prev + f_next);
    f_prev = f_next;
  }
  return acc;
}

std::pair<double, double> lambda_rates(const TwoStateModel& m) {
  if (m.monitoring == TwoStateModel::Monitoring::constant_rates) {
    return {m.lambda_up_rate, m.lambda_down_rate};
  }
  return {m.v_matrix(0, 0).real(), m.v_matrix(1, 1).real()};
}

Eigen::Vector2cd pairwise_sum(std::vector<Eigen::Vector2cd>& terms) {
  // Tree reduction: deterministic and better conditioned than running sums.
  std::size_t n = terms.size();
  while (n > 1) {
    std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i + half < n; ++i) {
      terms[i] += terms[i + half];
    }
    n = half;
  }
  return terms.empty() ? Eigen::Vector2cd::Zero().eval() : terms[0];
}

}  // namespace

void validate(const TwoStateModel& model) {
  if (model.hbar <= 0.0) {
    throw std::domain_error("TwoStateModel: hbar must be positive");
  }
  if (model.env_dim < 1) {
    throw std::domain_error("TwoStateModel: env_dim must be >= 1");
  }
  if (model.v_matrix.rows() != 2 || model.v_matrix.cols() != 2) {
    throw std::domain_error("TwoStateModel: v_matrix must be 2x2");
  }
  if ((model.v_matrix - model.v_matrix.adjoint().eval()).cwiseAbs().maxCoeff() >
      kHermitianTol) {
    throw std::domain_error("TwoStateModel: v_matrix must be hermitian");
  }
}

std::vector<ThetaBranch> uniform_theta_family(std::size_t n) {
  if (n < 2) {
    throw std::domain_error("uniform_theta_family: need at least 2 points");
  }
  std::vector<ThetaBranch> out(n);
  double c = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    out[j].theta =
        (kPi / 2) * static_cast<double>(j) / static_cast<double>(n - 1);
    out[j].coefficient = c;
    out[j].action = 0.0;
  }
  return out;
}

double lambda_theta(const TwoStateModel& model, double theta, double t) {
  check_theta(theta);
  if (t < model.t0) {
    throw std::domain_error("lambda_theta: t before t0");
  }
  if (model.monitoring == TwoStateModel::Monitoring::constant_rates) {
    double c2 = std::cos(theta) * std::cos(theta);
    return (c2 * model.lambda_up_rate + (1.0 - c2) * model.lambda_down_rate) *
           (t - model.t0);
  }
  return integrate_theta_action(model, theta, model.t0, t);
}

Complex theta_overlap_average(const TwoStateModel& model, double theta1,
                              double theta2, double T) {
  check_theta(theta1);
  check_theta(theta2);
  if (T <= 0.0) {
    throw std::domain_error("theta_overlap_average: T must be positive");
  }
  double geom = std::cos(theta1 - theta2);
  if (model.monitoring == TwoStateModel::Monitoring::constant_rates) {
    double c1 = std::cos(theta1) * std::cos(theta1);
    double c2 = std::cos(theta2) * std::cos(theta2);
    double rate = (c1 - c2) *
                  (model.lambda_up_rate - model.lambda_down_rate) / model.hbar;
    double x = rate * T;
    if (std::abs(x) < 1e-14) return Complex(geom, 0.0);
    Complex integral = (1.0 - std::exp(Complex(0.0, -x))) / Complex(0.0, x);
    return geom * integral;
  }
  // Incremental trapezoid of e^{-i(Lambda1 - Lambda2)/hbar} over [t0, t0+T].
  double dt = 0.05 * model.hbar / v_scale(model);
  auto n = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(T / dt)));
  dt = T / static_cast<double>(n);
  double l1 = 0.0, l2 = 0.0;
  double f1_prev = theta_expectation(model, theta1, 0.0);
  double f2_prev = theta_expectation(model, theta2, 0.0);
  Complex acc = 0.0;
  Complex g_prev(1.0, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    double tau = static_cast<double>(k) * dt;
    double f1 = theta_expectation(model, theta1, tau);
    double f2 = theta_expectation(model, theta2, tau);
    l1 += 0.5 * dt * (f1_prev + f1);
    l2 += 0.5 * dt * (f2_prev + f2);
    f1_prev = f1;
    f2_prev = f2;
    Complex g = std::exp(Complex(0.0, -(l1 - l2) / model.hbar));
    acc += 0.5 * dt * (g_prev + g);
    g_prev = g;
  }
  return geom * acc / T;
}

double decoherence_time(const TwoStateModel& model) {
  auto [lu, ld] = lambda_rates(model);
  double gap = std::abs(lu - ld);
  if (gap < 1e-15 * std::max({std::abs(lu), std::abs(ld), 1.0})) {
    throw regime_error("no decoherence: degenerate actions");
  }
  return model.hbar / gap;
}

PointerPair saddle_point_reduce(const TwoStateModel& model,
                                const std::vector<ThetaBranch>& branches,
                                double t, double gap_threshold) {
  if (branches.size() < 2) {
    throw std::domain_error("saddle_point_reduce: need a theta family");
  }
  if (std::abs(branches.front().theta) > 1e-9 ||
      std::abs(branches.back().theta - kPi / 2) > 1e-9) {
    throw std::domain_error(
        "saddle_point_reduce: family must span theta = 0 to pi/2");
  }
  double gap = lambda_theta(model, 0.0, t) - lambda_theta(model, kPi / 2, t);
  if (std::abs(gap) < gap_threshold * model.hbar) {
    throw regime_error("stationary-phase regime not reached");
  }
  Complex z(0.0, kPi * model.hbar / gap);
  PointerPair out;
  out.c_up = branches.front().coefficient * std::sqrt(z);
  out.c_down = branches.back().coefficient * std::sqrt(std::conj(z));
  out.lambda_gap = gap;
  return out;
}

Eigen::Vector2cd theta_grid_sum(const TwoStateModel& model,
                                const std::vector<ThetaBranch>& branches,
                                double t) {
  const std::size_t n = branches.size();
  if (n < 3) {
    throw std::domain_error("theta_grid_sum: grid too coarse");
  }
  for (std::size_t j = 1; j < n; ++j) {
    if (branches[j].theta <= branches[j - 1].theta) {
      throw std::domain_error("theta_grid_sum: thetas must be ascending");
    }
  }
  std::vector<Eigen::Vector2cd> terms;
  terms.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    double w;
    if (j == 0) {
      w = 0.5 * (branches[1].theta - branches[0].theta);
    } else if (j == n - 1) {
      w = 0.5 * (branches[n - 1].theta - branches[n - 2].theta);
    } else {
      w = 0.5 * (branches[j + 1].theta - branches[j - 1].theta);
    }
    // The continuous label is the Bloch polar angle 2*theta.
    double measure = 2.0 * w;
    double lam = lambda_theta(model, branches[j].theta, t);
    Complex phase = std::exp(Complex(0.0, -lam / model.hbar));
    Eigen::Vector2cd term;
    term(0) = branches[j].coefficient * std::cos(branches[j].theta) * phase *
              measure;
    term(1) = branches[j].coefficient * std::sin(branches[j].theta) * phase *
              measure;
    terms.push_back(term);
  }
  return pairwise_sum(terms);
}

Eigen::Vector2cd pointer_expression(const TwoStateModel& model,
                                    const PointerPair& pair, double t) {
  double l_up = lambda_theta(model, 0.0, t);
  double l_down = lambda_theta(model, kPi / 2, t);
  Eigen::Vector2cd out;
  out(0) = pair.c_up * std::exp(Complex(0.0, -l_up / model.hbar));
  out(1) = pair.c_down * std::exp(Complex(0.0, -l_down / model.hbar));
  return out;
}

Complex coherence_factor(const TwoStateModel& model, double t) {
  double gap = lambda_theta(model, 0.0, t) - lambda_theta(model, kPi / 2, t);
  return std::exp(Complex(0.0, gap / model.hbar));
}

Complex coherence_factor_window_average(const TwoStateModel& model, double T) {
  if (T < 0.0) {
    throw std::domain_error("coherence_factor_window_average: negative window");
  }
  if (T == 0.0) return Complex(1.0, 0.0);
  if (model.monitoring == TwoStateModel::Monitoring::constant_rates) {
    double x =
        (model.lambda_up_rate - model.lambda_down_rate) * T / model.hbar;
    if (std::abs(x) < 1e-14) return Complex(1.0, 0.0);
    return Complex(std::sin(x) / x, 0.0);
  }
  // Symmetric trapezoid over [t0 - T, t0 + T].
  double dt = 0.05 * model.hbar / v_scale(model);
  auto n = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(2.0 * T / dt)));
  dt = 2.0 * T / static_cast<double>(n);
  auto gap_rate = [&](double tau) {
    return theta_expectation(model, 0.0, tau) -
           theta_expectation(model, kPi / 2, tau);
  };
  double lam = 0.0;
  // Integrate the gap action from 0 to -T first to anchor the window start.
  double f_prev = gap_rate(0.0);
  auto m = n / 2;
  for (std::size_t k = 1; k <= m; ++k) {
    double f = gap_rate(-static_cast<double>(k) * dt);
    lam -= 0.5 * dt * (f_prev + f);
    f_prev = f;
  }
  double start = -static_cast<double>(m) * dt;
  Complex acc = 0.0;
  Complex g_prev = std::exp(Complex(0.0, lam / model.hbar));
  f_prev = gap_rate(start);
  for (std::size_t k = 1; k <= n; ++k) {
    double tau = start + static_cast<double>(k) * dt;
    double f = gap_rate(tau);
    lam += 0.5 * dt * (f_prev + f);
    f_prev = f;
    Complex g = std::exp(Complex(0.0, lam / model.hbar));
    acc += 0.5 * dt * (g_prev + g);
    g_prev = g;
  }
  return acc / (static_cast<double>(n) * dt);
}

NoncommutativeGrowth noncommutative_growth(const TwoStateModel& model,
                                           double t) {
  if (t < model.t0) {
    throw std::domain_error("noncommutative_growth: t before t0");
  }
  double scale = std::max(max_abs(model.v_matrix), 1e-300);
  if (std::abs(model.v_matrix(0, 0)) > 1e-12 * scale ||
      std::abs(model.v_matrix(1, 1)) > 1e-12 * scale) {
    throw std::domain_error(
        "noncommutative_growth: V has diagonal entries in the energy basis; "
        "|phi_+-> are not its eigenvectors");
  }
  if (std::abs(model.v_matrix(0, 1).imag()) > 1e-12 * scale) {
    throw std::domain_error(
        "noncommutative_growth: V off-diagonal is not real; |phi_+-> are not "
        "its eigenvectors");
  }
  double tau = t - model.t0;
  Eigen::Vector2cd up(1.0, 0.0), down(0.0, 1.0);
  Eigen::Vector2cd plus = (up + down) / std::sqrt(2.0);
  Eigen::Vector2cd minus = (up - down) / std::sqrt(2.0);
  Eigen::Matrix2cd evolve = Eigen::Matrix2cd::Zero();
  evolve(0, 0) = std::exp(Complex(0.0, -model.eps_up * tau / model.hbar));
  evolve(1, 1) = std::exp(Complex(0.0, -model.eps_down * tau / model.hbar));
  Eigen::Vector2cd plus_t = evolve * plus;
  Eigen::Vector2cd minus_t = evolve * minus;
  NoncommutativeGrowth out;
  out.exact = plus_t.dot(model.v_matrix * minus_t);
  double v = model.v_matrix(0, 1).real();
  double v_plus = v, v_minus = -v;
  out.estimate = Complex(0.0, tau / (2.0 * model.hbar)) * (v_minus - v_plus) *
                 (model.eps_up - model.eps_down);
  out.difference = std::abs(out.exact - out.estimate);
  return out;
}

HamiltonianSplit build_dephasing_composite(const TwoStateModel& model) {
  validate(model);
  auto [lu, ld] = lambda_rates(model);
  CompositeSpace sys({2});
  CompositeSpace env({model.env_dim});
  Matrix h_sys = Matrix::Zero(2, 2);
  h_sys(0, 0) = model.eps_up;
  h_sys(1, 1) = model.eps_down;
  const auto de = static_cast<Eigen::Index>(model.env_dim);
  Matrix h_env = Matrix::Zero(de, de);
  Matrix probe = Matrix::Zero(de, de);
  for (Eigen::Index k = 0; k < de; ++k) {
    h_env(k, k) = 0.3 * static_cast<double>(k);
    // probe(0,0) = 1 keeps the branch rates exactly lambda_up/down when the
    // environment starts in |e_0>.
    probe(k, k) = 1.0 + 0.7 * static_cast<double>(k);
  }
  CompositeSpace full = CompositeSpace::joined(sys, env);
  Matrix up_proj = Matrix::Zero(2, 2);
  up_proj(0, 0) = 1.0;
  Matrix down_proj = Matrix::Zero(2, 2);
  down_proj(1, 1) = 1.0;
  OperatorMatrix h_int_up = tensor_product(
      OperatorMatrix(sys, up_proj, true), OperatorMatrix(env, lu * probe, true));
  OperatorMatrix h_int_down =
      tensor_product(OperatorMatrix(sys, down_proj, true),
                     OperatorMatrix(env, ld * probe, true));
  OperatorMatrix h_int(full, h_int_up.entries() + h_int_down.entries(), true);
  return HamiltonianSplit::build(OperatorMatrix(sys, h_sys, true),
                                 OperatorMatrix(env, h_env, true), h_int);
}

StateVector initial_composite_state(const TwoStateModel& model, Complex a,
                                    Complex b) {
  Vector sys(2);
  sys << a, b;
  Vector env = Vector::Zero(static_cast<Eigen::Index>(model.env_dim));
  env(0) = 1.0;
  Vector full(sys.size() * env.size());
  for (Eigen::Index i = 0; i < sys.size(); ++i) {
    full.segment(i * env.size(), env.size()) = sys(i) * env;
  }
  return StateVector::normalized(
      CompositeSpace::joined(CompositeSpace({2}),
                             CompositeSpace({model.env_dim})),
      std::move(full), model.t0);
}

}  // namespace decosim
