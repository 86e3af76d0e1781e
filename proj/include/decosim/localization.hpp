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

// 1D ring lattice particle monitored through its position by two-level
// environment monitors. Each monitor couples as c_e(R) sigma_z^(e) with a
// per-site profile c_e; the potential array drives pointer selection and
// the default coupling profiles.
struct LatticeModel {
  std::size_t n_sites = 16;
  double hop = 0.05;          // nearest-neighbor amplitude of the ring Laplacian
  double mass_proxy = 10.0;   // hop = hbar^2 / (2 mass_proxy), lattice spacing 1
  std::vector<double> potential;             // V(R), length n_sites
  std::size_t env_monitors = 0;
  std::vector<std::vector<double>> couplings;  // per monitor, per site
  std::vector<double> monitor_splittings;      // sigma_z splitting per monitor
  double hbar = 1.0;

  static LatticeModel with_hop(std::size_t n_sites, double hop,
                               std::vector<double> potential, double hbar = 1.0);
  static LatticeModel with_mass(std::size_t n_sites, double mass_proxy,
                                std::vector<double> potential,
                                double hbar = 1.0);
};

void validate(const LatticeModel& model);

enum class MonitorInit {
  plus_superposition,  // (|0> + |1>)/sqrt(2): monitoring accumulates phases
  polarized_up,        // |0>: one definite branch, potential acts classically
};

struct Timescales {
  double t_dec = 0.0;  // hbar / |V_eff(r1) - V_eff(r2)|, inf when degenerate
  double t_coh = 0.0;  // hbar / effective kinetic matrix element
  bool no_decoherence = false;
};

struct BranchResolutionResult {
  std::size_t separation = 0;
  bool resolved = false;
};

// h_sys: ring hopping matrix (diag 2 hop, off-diagonal -hop, periodic);
// h_env: monitor splittings; h_int: sum_e diag(c_e) (x) sigma_z^(e).
HamiltonianSplit build_composite(const LatticeModel& model);

// Sites where the potential has a discrete local extremum, wrap-aware;
// plateau sites are all returned. Constant potential is degenerate.
std::vector<std::size_t> pointer_positions(const LatticeModel& model);

// Exact composite evolution sampled at `times`, reduced to the position
// space at each sample.
std::vector<std::pair<double, DensityMatrix>> evolve_and_reduce(
    const LatticeModel& model, const StateVector& psi0,
    const std::vector<double>& times);

// 1/e decay scale of |rho(R, R+d)| averaged over R, fitted on
// d in [1, n_sites/4]; n_sites when there is no significant decay, 0 when
// there is no coherence beyond the diagonal.
double coherence_length(const DensityMatrix& rho);

Timescales timescales(const LatticeModel& model, std::size_t r1,
                      std::size_t r2);

// Probe horizon for the effective kinetic element of non-adjacent pairs.
inline constexpr double kProbeHorizonOverHop = 10.0;

// Smallest ring separation d whose worst pair satisfies
// t_dec <= T / separation_factor.
BranchResolutionResult branch_resolution(const LatticeModel& model, double T,
                                         double separation_factor = 10.0);

// <R>(t) per sample of a reduced-position trajectory.
std::vector<double> ehrenfest_track(
    const std::vector<std::pair<double, DensityMatrix>>& branch_rho);

double mean_position(const DensityMatrix& rho);
double position_variance(const DensityMatrix& rho);

// Position-space packets on the ring.
StateVector gaussian_packet(const LatticeModel& model, double center,
                            double sigma, double k0 = 0.0);
StateVector plane_wave_packet(const LatticeModel& model, std::size_t k_index);

// packet (x) monitor states.
StateVector initial_composite_state(const LatticeModel& model,
                                    const StateVector& cm_packet,
                                    MonitorInit init);

// Total monitored field sum_e c_e(R), the contrast that sets t_dec.
std::vector<double> effective_potential(const LatticeModel& model);

}  // namespace decosim
