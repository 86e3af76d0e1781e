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

#include "decosim/averaging.hpp"

#include <cmath>

namespace decosim {

DensityMatrix time_average_density(const DensityTrajectory& traj) {
  if (traj.samples.empty()) {
    throw std::domain_error("time_average_density: empty trajectory");
  }
  if (traj.samples.size() < 2 || traj.times.size() != traj.samples.size()) {
    throw std::domain_error("time_average_density: need >= 2 matched samples");
  }
  DensityAverager avg;
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    avg.add(traj.times[k], traj.samples[k].entries());
  }
  return avg.finish(traj.samples.front().space(),
                    traj.samples.front().basis_label());
}

void DensityAverager::add(double t, const Matrix& rho) {
  if (count_ == 0) {
    accum_ = Matrix::Zero(rho.rows(), rho.cols());
    t_first_ = t;
  } else {
    if (t <= t_prev_) {
      throw std::domain_error("DensityAverager: times must strictly increase");
    }
    accum_ += 0.5 * (t - t_prev_) * (prev_ + rho);
  }
  prev_ = rho;
  t_prev_ = t;
  ++count_;
}

DensityMatrix DensityAverager::finish(const CompositeSpace& space,
                                      std::string basis_label) const {
  if (count_ < 2) {
    throw std::domain_error("DensityAverager: need >= 2 samples");
  }
  Matrix avg = accum_ / (t_prev_ - t_first_);
  avg = ((avg + avg.adjoint().eval()) / 2.0).eval();
  return DensityMatrix(space, std::move(avg), std::move(basis_label));
}

DensityMatrix dephase_in_basis(const DensityMatrix& rho,
                               const SpectralDecomposition& basis) {
  const auto d = static_cast<Eigen::Index>(rho.space().total_dim());
  if (basis.eigenvectors.rows() != d || basis.eigenvectors.cols() != d) {
    throw std::domain_error("dephase_in_basis: basis does not span the space");
  }
  Matrix in_basis =
      basis.eigenvectors.adjoint() * rho.entries() * basis.eigenvectors;
  double scale = basis.eigenvalues.cwiseAbs().maxCoeff();
  double tol = kDegeneracyRelTol * std::max(scale, 1e-300);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (std::abs(basis.eigenvalues(i) - basis.eigenvalues(j)) > tol) {
        in_basis(i, j) = 0.0;
      }
    }
  }
  Matrix out = basis.eigenvectors * in_basis * basis.eigenvectors.adjoint();
  out = ((out + out.adjoint().eval()) / 2.0).eval();
  return DensityMatrix(rho.space(), std::move(out), rho.basis_label());
}

double microcanonical_compare(const DensityMatrix& rho_bar, double e_lo,
                              double e_hi,
                              const SpectralDecomposition& basis) {
  const auto d = static_cast<Eigen::Index>(rho_bar.space().total_dim());
  if (basis.eigenvectors.rows() != d) {
    throw std::domain_error("microcanonical_compare: basis dimension mismatch");
  }
  std::vector<Eigen::Index> in_window;
  for (Eigen::Index k = 0; k < d; ++k) {
    if (basis.eigenvalues(k) >= e_lo && basis.eigenvalues(k) <= e_hi) {
      in_window.push_back(k);
    }
  }
  if (in_window.empty()) {
    throw std::domain_error("microcanonical_compare: empty energy window");
  }
  Matrix rho_mc = Matrix::Zero(d, d);
  for (Eigen::Index k : in_window) {
    rho_mc += basis.eigenvectors.col(k) * basis.eigenvectors.col(k).adjoint();
  }
  rho_mc /= static_cast<double>(in_window.size());
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_bar.entries() - rho_mc,
                                           Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

CoherenceReport coherence_report(const DensityMatrix& rho, double window) {
  CoherenceReport rep;
  rep.window = window;
  rep.offdiag_l1 = offdiag_l1(rho.entries());
  rep.offdiag_max = offdiag_max_abs(rho.entries());
  rep.purity = (rho.entries() * rho.entries()).trace().real();
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries(),
                                           Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    double lam = std::max(es.eigenvalues()(k), 1e-14);
    s -= lam * std::log(lam);
  }
  rep.entropy = std::max(s, 0.0);
  return rep;
}

double offdiag_l1(const Matrix& m) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) sum += std::abs(m(i, j));
    }
  }
  return sum;
}

double offdiag_max_abs(const Matrix& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) best = std::max(best, std::abs(m(i, j)));
    }
  }
  return best;
}

}  // namespace decosim
