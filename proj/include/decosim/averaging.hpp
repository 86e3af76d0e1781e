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

#include <functional>
#include <string>
#include <vector>

#include "decosim/hilbert.hpp"

namespace decosim {

struct CoherenceReport {
  double offdiag_l1 = 0.0;   // sum_{i != j} |rho_ij|
  double offdiag_max = 0.0;  // max_{i != j} |rho_ij|
  double purity = 0.0;       // Tr rho^2
  double entropy = 0.0;      // -Tr rho ln rho, natural log
  double window = 0.0;       // averaging length T this report belongs to
};

struct DensityTrajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> samples;
};

// Entrywise trapezoid average over the sampled window. Uniform or
// non-uniform grids; needs at least two samples.
DensityMatrix time_average_density(const DensityTrajectory& traj);

// Streaming variant of the same trapezoid rule, for long windows where
// storing the trajectory is wasteful.
class DensityAverager {
 public:
  void add(double t, const Matrix& rho);
  bool empty() const { return count_ == 0; }
  DensityMatrix finish(const CompositeSpace& space,
                       std::string basis_label = "") const;

 private:
  Matrix accum_;
  Matrix prev_;
  double t_prev_ = 0.0;
  double t_first_ = 0.0;
  std::size_t count_ = 0;
};

// T -> infinity limit of the time average: zero every coherence between
// distinct eigenvalues, keep degenerate blocks. Equals the sum of
// P_k rho P_k over eigenvalue-degeneracy projectors.
DensityMatrix dephase_in_basis(const DensityMatrix& rho,
                               const SpectralDecomposition& basis);

// Pairs (i, j) with |E_i - E_j| <= 1e-9 max|E| count as degenerate.
inline constexpr double kDegeneracyRelTol = 1e-9;

// Trace distance (1/2)||rho_bar - rho_mc||_1 against the uniform mixture
// over eigenstates whose eigenvalue lies in [e_lo, e_hi].
double microcanonical_compare(const DensityMatrix& rho_bar, double e_lo,
                              double e_hi, const SpectralDecomposition& basis);

CoherenceReport coherence_report(const DensityMatrix& rho, double window);

double offdiag_l1(const Matrix& m);
double offdiag_max_abs(const Matrix& m);

}  // namespace decosim
