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

#include "decosim/localization.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace decosim {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t ring_distance(std::size_t a, std::size_t b, std::size_t n) {
  std::size_t d = (a > b) ? a - b : b - a;
  return std::min(d, n - d);
}

Matrix ring_hopping(const LatticeModel& m) {
  const auto n = static_cast<Eigen::Index>(m.n_sites);
  Matrix h = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, i) = 2.0 * m.hop;
    h(i, (i + 1) % n) = -m.hop;
    h((i + 1) % n, i) = -m.hop;
  }
  return h;
}

}  // namespace

LatticeModel LatticeModel::with_hop(std::size_t n_sites, double hop,
                                    std::vector<double> potential,
                                    double hbar) {
  LatticeModel m;
  m.n_sites = n_sites;
  m.hop = hop;
  m.mass_proxy = hbar * hbar / (2.0 * hop);
  m.potential = std::move(potential);
  m.hbar = hbar;
  validate(m);
  return m;
}

LatticeModel LatticeModel::with_mass(std::size_t n_sites, double mass_proxy,
                                     std::vector<double> potential,
                                     double hbar) {
  LatticeModel m;
  m.n_sites = n_sites;
  m.mass_proxy = mass_proxy;
  m.hop = hbar * hbar / (2.0 * mass_proxy);
  m.potential = std::move(potential);
  m.hbar = hbar;
  validate(m);
  return m;
}

void validate(const LatticeModel& model) {
  if (model.n_sites < 4) {
    throw config_error("LatticeModel: n_sites must be >= 4");
  }
  if (model.hop <= 0.0) {
    throw config_error("LatticeModel: hop must be positive");
  }
  if (model.hbar <= 0.0) {
    throw config_error("LatticeModel: hbar must be positive");
  }
  if (model.potential.size() != model.n_sites) {
    throw config_error("LatticeModel: potential length != n_sites");
  }
  for (double v : model.potential) {
    if (!std::isfinite(v)) {
      throw config_error("LatticeModel: potential has non-finite entries");
    }
  }
  if (model.couplings.size() != model.env_monitors) {
    throw config_error("LatticeModel: one coupling profile per monitor");
  }
  for (const auto& c : model.couplings) {
    if (c.size() != model.n_sites) {
      throw config_error("LatticeModel: coupling profile length != n_sites");
    }
  }
  if (!model.monitor_splittings.empty() &&
      model.monitor_splittings.size() != model.env_monitors) {
    throw config_error("LatticeModel: one splitting per monitor");
  }
  std::size_t dim = model.n_sites;
  for (std::size_t e = 0; e < model.env_monitors; ++e) {
    if (dim > kMaxTotalDim / 2) {
      throw config_error("LatticeModel: n_sites * 2^env_monitors exceeds cap");
    }
    dim *= 2;
  }
}

HamiltonianSplit build_composite(const LatticeModel& model) {
  validate(model);
  std::vector<std::size_t> dims{model.n_sites};
  for (std::size_t e = 0; e < model.env_monitors; ++e) dims.push_back(2);
  CompositeSpace full(dims);
  const auto total = static_cast<Eigen::Index>(full.total_dim());
  const auto n = static_cast<Eigen::Index>(model.n_sites);
  const std::size_t m = model.env_monitors;
  const std::size_t env_dim = full.total_dim() / model.n_sites;

  CompositeSpace sys({model.n_sites});
  OperatorMatrix h_sys_local(sys, ring_hopping(model), true);

  // Monitor basis index e decomposes into sigma_z eigenvalues, first
  // monitor slowest.
  auto sigma_z_of = [m](std::size_t env_index, std::size_t monitor) {
    std::size_t shift = m - 1 - monitor;
    return ((env_index >> shift) & 1u) ? -1.0 : 1.0;
  };

  if (m == 0) {
    OperatorMatrix zero(full, Matrix::Zero(total, total), true);
    return HamiltonianSplit(lift_operator(h_sys_local, full, 0), zero, zero, 1);
  }

  const auto de = static_cast<Eigen::Index>(env_dim);
  Matrix h_env_local = Matrix::Zero(de, de);
  for (Eigen::Index e = 0; e < de; ++e) {
    double sum = 0.0;
    for (std::size_t mon = 0; mon < m; ++mon) {
      double split = model.monitor_splittings.empty()
                         ? 0.0
                         : model.monitor_splittings[mon];
      sum += 0.5 * split * sigma_z_of(static_cast<std::size_t>(e), mon);
    }
    h_env_local(e, e) = sum;
  }

  Matrix h_int = Matrix::Zero(total, total);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index e = 0; e < de; ++e) {
      double val = 0.0;
      for (std::size_t mon = 0; mon < m; ++mon) {
        val += model.couplings[mon][static_cast<std::size_t>(r)] *
               sigma_z_of(static_cast<std::size_t>(e), mon);
      }
      Eigen::Index idx = r * de + e;
      h_int(idx, idx) = val;
    }
  }

  std::vector<std::size_t> env_dims(m, 2);
  CompositeSpace env(env_dims);
  return HamiltonianSplit::build(h_sys_local,
                                 OperatorMatrix(env, h_env_local, true),
                                 OperatorMatrix(full, h_int, true));
}

std::vector<std::size_t> pointer_positions(const LatticeModel& model) {
  validate(model);
  const std::size_t n = model.n_sites;
  const auto& v = model.potential;

  bool constant = true;
  for (std::size_t i = 1; i < n; ++i) {
    if (v[i] != v[0]) {
      constant = false;
      break;
    }
  }
  if (constant) {
    throw regime_error("degenerate: all positions extremal");
  }

  auto next_distinct = [&](std::size_t i, int step) {
    std::size_t j = i;
    for (std::size_t hops = 0; hops < n; ++hops) {
      j = (j + n + static_cast<std::size_t>(step)) % n;
      if (v[j] != v[i]) return v[j];
    }
    return v[i];  // unreachable for non-constant profiles
  };

  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    double left = next_distinct(i, -1);
    double right = next_distinct(i, +1);
    bool is_max = v[i] > left && v[i] > right;
    bool is_min = v[i] < left && v[i] < right;
    if (is_max || is_min) out.push_back(i);
  }
  return out;
}

std::vector<std::pair<double, DensityMatrix>> evolve_and_reduce(
    const LatticeModel& model, const StateVector& psi0,
    const std::vector<double>& times) {
  if (times.empty()) {
    throw std::domain_error("evolve_and_reduce: empty time grid");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (times[k] <= times[k - 1]) {
      throw std::domain_error("evolve_and_reduce: times must be ascending");
    }
  }
  HamiltonianSplit split = build_composite(model);
  if (psi0.space() != split.space()) {
    throw std::domain_error("evolve_and_reduce: state space mismatch");
  }

  std::vector<std::size_t> keep{0};
  std::vector<std::pair<double, DensityMatrix>> out;
  out.reserve(times.size());

  auto reduce = [&](const StateVector& psi, double t) {
    DensityMatrix full = DensityMatrix::from_state(psi, "position");
    out.emplace_back(t, partial_trace(full, keep));
  };

  if (split.space().total_dim() <= kSpectralDimCap) {
    SpectralPropagator prop(split.total(), model.hbar);
    StateVector psi = psi0;
    double t_now = psi0.time();
    for (double t : times) {
      if (t < t_now) {
        throw std::domain_error("evolve_and_reduce: sample before state time");
      }
      psi = prop.apply(psi, t - t_now);
      t_now = t;
      reduce(psi, t);
    }
  } else {
    StateVector psi = psi0;
    double t_now = psi0.time();
    for (double t : times) {
      psi = evolve_exact(split, psi, t - t_now, model.hbar);
      t_now = t;
      reduce(psi, t);
    }
  }
  return out;
}

double coherence_length(const DensityMatrix& rho) {
  const auto n = static_cast<std::size_t>(rho.space().total_dim());
  const auto ni = static_cast<Eigen::Index>(n);
  const std::size_t dmax = std::max<std::size_t>(1, n / 4);

  double diag_scale = 0.0;
  for (Eigen::Index r = 0; r < ni; ++r) diag_scale += std::abs(rho.entries()(r, r));
  diag_scale /= static_cast<double>(n);

  std::vector<double> y(dmax);
  for (std::size_t d = 1; d <= dmax; ++d) {
    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      sum += std::abs(rho.entries()(static_cast<Eigen::Index>(r),
                                    static_cast<Eigen::Index>((r + d) % n)));
    }
    y[d - 1] = sum / static_cast<double>(n);
  }

  if (y[0] < 1e-12 * diag_scale) return 0.0;  // nothing beyond the diagonal

  // Log-linear least squares with free intercept.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t d = 1; d <= dmax; ++d) {
    double ly = std::log(std::max(y[d - 1], 1e-18 * diag_scale));
    sx += static_cast<double>(d);
    sy += ly;
    sxx += static_cast<double>(d) * static_cast<double>(d);
    sxy += static_cast<double>(d) * ly;
  }
  double npts = static_cast<double>(dmax);
  double denom = npts * sxx - sx * sx;
  if (denom <= 0.0) return static_cast<double>(n);
  double slope = (npts * sxy - sx * sy) / denom;
  if (slope >= -1e-6) return static_cast<double>(n);
  double ell = -1.0 / slope;
  return std::min(ell, static_cast<double>(n));
}

std::vector<double> effective_potential(const LatticeModel& model) {
  std::vector<double> v(model.n_sites, 0.0);
  for (const auto& profile : model.couplings) {
    for (std::size_t r = 0; r < model.n_sites; ++r) v[r] += profile[r];
  }
  return v;
}

Timescales timescales(const LatticeModel& model, std::size_t r1,
                      std::size_t r2) {
  validate(model);
  if (r1 == r2 || r1 >= model.n_sites || r2 >= model.n_sites) {
    throw std::domain_error("timescales: need two distinct sites on the ring");
  }
  std::vector<double> v_eff = effective_potential(model);
  double dv = std::abs(v_eff[r1] - v_eff[r2]);

  Timescales out;
  if (dv <= 0.0) {
    out.no_decoherence = true;
    out.t_dec = std::numeric_limits<double>::infinity();
  } else {
    out.t_dec = model.hbar / dv;
  }

  double element;
  if (ring_distance(r1, r2, model.n_sites) == 1) {
    element = model.hop;
  } else {
    // The bare lattice Laplacian has zero element between non-adjacent
    // sites; probe the short-time propagator amplitude instead.
    CompositeSpace sys({model.n_sites});
    SpectralDecomposition eig =
        spectral_decompose(OperatorMatrix(sys, ring_hopping(model), true));
    const Eigen::Index a = static_cast<Eigen::Index>(r1);
    const Eigen::Index b = static_cast<Eigen::Index>(r2);
    double best = 0.0;
    const int steps = 4000;
    for (int k = 1; k <= steps; ++k) {
      double x = kProbeHorizonOverHop * static_cast<double>(k) /
                 static_cast<double>(steps);
      Complex amp = 0.0;
      for (Eigen::Index j = 0; j < eig.eigenvalues.size(); ++j) {
        amp += eig.eigenvectors(a, j) * std::conj(eig.eigenvectors(b, j)) *
               std::exp(Complex(0.0, -eig.eigenvalues(j) * x / model.hop));
      }
      best = std::max(best, std::abs(amp));
    }
    element = model.hop * best;
  }
  out.t_coh = (element > 0.0) ? model.hbar / element
                              : std::numeric_limits<double>::infinity();
  return out;
}

BranchResolutionResult branch_resolution(const LatticeModel& model, double T,
                                         double separation_factor) {
  validate(model);
  if (T <= 0.0) {
    throw std::domain_error("branch_resolution: T must be positive");
  }
  std::vector<double> v_eff = effective_potential(model);
  const std::size_t n = model.n_sites;
  for (std::size_t d = 1; d <= n / 2; ++d) {
    double worst = 0.0;
    bool degenerate_pair = false;
    for (std::size_t i = 0; i < n; ++i) {
      double dv = std::abs(v_eff[i] - v_eff[(i + d) % n]);
      if (dv <= 0.0) {
        degenerate_pair = true;
        break;
      }
      worst = std::max(worst, model.hbar / dv);
    }
    if (!degenerate_pair && worst <= T / separation_factor) {
      return BranchResolutionResult{d, true};
    }
  }
  return BranchResolutionResult{0, false};
}

std::vector<double> ehrenfest_track(
    const std::vector<std::pair<double, DensityMatrix>>& branch_rho) {
  std::vector<double> out;
  out.reserve(branch_rho.size());
  for (const auto& [t, rho] : branch_rho) {
    (void)t;
    out.push_back(mean_position(rho));
  }
  return out;
}

double mean_position(const DensityMatrix& rho) {
  double mean = 0.0;
  for (Eigen::Index r = 0; r < rho.entries().rows(); ++r) {
    mean += static_cast<double>(r) * rho.entries()(r, r).real();
  }
  return mean;
}

double position_variance(const DensityMatrix& rho) {
  double mean = mean_position(rho);
  double m2 = 0.0;
  for (Eigen::Index r = 0; r < rho.entries().rows(); ++r) {
    m2 += static_cast<double>(r) * static_cast<double>(r) *
          rho.entries()(r, r).real();
  }
  return m2 - mean * mean;
}

StateVector gaussian_packet(const LatticeModel& model, double center,
                            double sigma, double k0) {
  if (sigma <= 0.0) {
    throw std::domain_error("gaussian_packet: sigma must be positive");
  }
  const auto n = static_cast<Eigen::Index>(model.n_sites);
  Vector amp(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    double dx = static_cast<double>(r) - center;
    double half = static_cast<double>(model.n_sites) / 2.0;
    while (dx > half) dx -= static_cast<double>(model.n_sites);
    while (dx < -half) dx += static_cast<double>(model.n_sites);
    amp(r) = std::exp(Complex(-dx * dx / (4.0 * sigma * sigma), k0 * dx));
  }
  return StateVector::normalized(CompositeSpace({model.n_sites}),
                                 std::move(amp), 0.0);
}

StateVector plane_wave_packet(const LatticeModel& model, std::size_t k_index) {
  const auto n = static_cast<Eigen::Index>(model.n_sites);
  double k = 2.0 * kPi * static_cast<double>(k_index) /
             static_cast<double>(model.n_sites);
  Vector amp(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    amp(r) = std::exp(Complex(0.0, k * static_cast<double>(r)));
  }
  return StateVector::normalized(CompositeSpace({model.n_sites}),
                                 std::move(amp), 0.0);
}

StateVector initial_composite_state(const LatticeModel& model,
                                    const StateVector& cm_packet,
                                    MonitorInit init) {
  if (cm_packet.space().total_dim() != model.n_sites) {
    throw std::domain_error("initial_composite_state: packet is not on the ring");
  }
  StateVector psi = cm_packet;
  CompositeSpace qubit({2});
  Vector up(2), plus(2);
  up << 1.0, 0.0;
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  for (std::size_t e = 0; e < model.env_monitors; ++e) {
    StateVector mon(qubit, init == MonitorInit::plus_superposition ? plus : up,
                    cm_packet.time());
    psi = tensor_product(psi, mon);
  }
  return psi;
}

}  // namespace decosim
