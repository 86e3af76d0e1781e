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

#include "decosim/hilbert.hpp"

#include <algorithm>
#include <cmath>

namespace decosim {

namespace {

void check_same_space(const CompositeSpace& a, const CompositeSpace& b,
                      const char* what) {
  if (a != b) {
    throw std::domain_error(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

CompositeSpace::CompositeSpace(std::vector<std::size_t> dims)
    : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw std::domain_error("CompositeSpace: empty dimension list");
  }
  for (std::size_t d : dims_) {
    if (d < 1) {
      throw std::domain_error("CompositeSpace: subsystem dimension < 1");
    }
    if (total_dim_ > kMaxTotalDim / d) {
      throw config_error("CompositeSpace: total dimension exceeds cap " +
                         std::to_string(kMaxTotalDim));
    }
    total_dim_ *= d;
  }
}

CompositeSpace CompositeSpace::joined(const CompositeSpace& a,
                                      const CompositeSpace& b) {
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return CompositeSpace(std::move(dims));
}

StateVector::StateVector(CompositeSpace space, Vector amplitudes, double time)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)), time_(time) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.total_dim()) {
    throw std::domain_error("StateVector: amplitude length != total_dim");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > kNormTol) {
    throw std::domain_error("StateVector: amplitudes are not normalized");
  }
}

StateVector StateVector::normalized(CompositeSpace space, Vector amplitudes,
                                    double time) {
  double n = amplitudes.norm();
  if (n <= 0.0 || !std::isfinite(n)) {
    throw std::domain_error("StateVector: cannot normalize zero vector");
  }
  return StateVector(std::move(space), amplitudes / n, time);
}

OperatorMatrix::OperatorMatrix(CompositeSpace space, Matrix entries,
                               bool hermitian)
    : space_(std::move(space)),
      entries_(std::move(entries)),
      hermitian_(hermitian) {
  const auto d = static_cast<Eigen::Index>(space_.total_dim());
  if (entries_.rows() != d || entries_.cols() != d) {
    throw std::domain_error("OperatorMatrix: entries shape != total_dim");
  }
  if (hermitian_) {
    double dev = (entries_ - entries_.adjoint().eval()).cwiseAbs().maxCoeff();
    if (dev > kHermitianTol) {
      throw std::domain_error("OperatorMatrix: hermitian flag set but max|H - H^dag| = " +
                              std::to_string(dev));
    }
  }
}

OperatorMatrix OperatorMatrix::identity(const CompositeSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.total_dim());
  return OperatorMatrix(space, Matrix::Identity(d, d), true);
}

DensityMatrix::DensityMatrix(CompositeSpace space, Matrix entries,
                             std::string basis_label)
    : space_(std::move(space)),
      entries_(std::move(entries)),
      basis_label_(std::move(basis_label)) {
  const auto d = static_cast<Eigen::Index>(space_.total_dim());
  if (entries_.rows() != d || entries_.cols() != d) {
    throw std::domain_error("DensityMatrix: entries shape != total_dim");
  }
  double herm_dev = (entries_ - entries_.adjoint().eval()).cwiseAbs().maxCoeff();
  if (herm_dev > 1e-10) {
    throw std::domain_error("DensityMatrix: not Hermitian, max dev " +
                            std::to_string(herm_dev));
  }
  double tr_dev = std::abs(entries_.trace() - Complex(1.0, 0.0));
  if (tr_dev > 1e-10) {
    throw std::domain_error("DensityMatrix: trace deviates from 1 by " +
                            std::to_string(tr_dev));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_,
                                           Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9) {
    throw std::domain_error("DensityMatrix: negative eigenvalue " +
                            std::to_string(es.eigenvalues().minCoeff()));
  }
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi,
                                        std::string basis_label) {
  Matrix rho = psi.amplitudes() * psi.amplitudes().adjoint();
  return DensityMatrix(psi.space(), std::move(rho), std::move(basis_label));
}

OperatorMatrix tensor_product(const OperatorMatrix& a,
                              const OperatorMatrix& b) {
  const auto da = static_cast<Eigen::Index>(a.space().total_dim());
  const auto db = static_cast<Eigen::Index>(b.space().total_dim());
  CompositeSpace joined = CompositeSpace::joined(a.space(), b.space());
  Matrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a.entries()(i, j) * b.entries();
    }
  }
  return OperatorMatrix(std::move(joined), std::move(out),
                        a.is_hermitian() && b.is_hermitian());
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  const auto da = a.amplitudes().size();
  const auto db = b.amplitudes().size();
  Vector out(da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    out.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
  }
  return StateVector(CompositeSpace::joined(a.space(), b.space()),
                     std::move(out), a.time());
}

OperatorMatrix lift_operator(const OperatorMatrix& op,
                             const CompositeSpace& full,
                             std::size_t first_subsystem) {
  const auto& fdims = full.dims();
  const auto& odims = op.space().dims();
  if (first_subsystem + odims.size() > fdims.size()) {
    throw std::domain_error("lift_operator: subsystem range out of bounds");
  }
  std::size_t pre = 1, post = 1;
  for (std::size_t k = 0; k < first_subsystem; ++k) pre *= fdims[k];
  for (std::size_t k = 0; k < odims.size(); ++k) {
    if (fdims[first_subsystem + k] != odims[k]) {
      throw std::domain_error("lift_operator: subsystem dimensions disagree");
    }
  }
  for (std::size_t k = first_subsystem + odims.size(); k < fdims.size(); ++k) {
    post *= fdims[k];
  }
  OperatorMatrix lifted = op;
  if (pre > 1) {
    lifted = tensor_product(
        OperatorMatrix::identity(CompositeSpace({pre})), lifted);
  }
  if (post > 1) {
    lifted = tensor_product(
        lifted, OperatorMatrix::identity(CompositeSpace({post})));
  }
  return OperatorMatrix(full, lifted.entries(), lifted.is_hermitian());
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::size_t>& keep) {
  const auto& dims = rho.space().dims();
  const std::size_t m = dims.size();
  if (keep.empty()) {
    throw std::domain_error("partial_trace: keep set is empty");
  }
  std::vector<bool> kept(m, false);
  for (std::size_t k : keep) {
    if (k >= m) {
      throw std::domain_error("partial_trace: subsystem index out of range");
    }
    if (kept[k]) {
      throw std::domain_error("partial_trace: duplicate subsystem index");
    }
    kept[k] = true;
  }

  // Strides in the composite index, first subsystem slowest.
  std::vector<std::size_t> stride(m, 1);
  for (std::size_t k = m; k-- > 1;) {
    stride[k - 1] = stride[k] * dims[k];
  }

  std::vector<std::size_t> keep_dims, keep_stride, tr_dims, tr_stride;
  for (std::size_t k = 0; k < m; ++k) {
    if (kept[k]) {
      keep_dims.push_back(dims[k]);
      keep_stride.push_back(stride[k]);
    } else {
      tr_dims.push_back(dims[k]);
      tr_stride.push_back(stride[k]);
    }
  }

  auto offsets = [](const std::vector<std::size_t>& sub_dims,
                    const std::vector<std::size_t>& sub_stride) {
    std::size_t total = 1;
    for (std::size_t d : sub_dims) total *= d;
    std::vector<std::size_t> out(total, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx;
      for (std::size_t k = sub_dims.size(); k-- > 0;) {
        out[idx] += (rem % sub_dims[k]) * sub_stride[k];
        rem /= sub_dims[k];
      }
    }
    return out;
  };

  const std::vector<std::size_t> keep_off = offsets(keep_dims, keep_stride);
  const std::vector<std::size_t> tr_off =
      tr_dims.empty() ? std::vector<std::size_t>{0}
                      : offsets(tr_dims, tr_stride);

  const std::size_t kd = keep_off.size();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(kd),
                            static_cast<Eigen::Index>(kd));
  for (std::size_t a = 0; a < kd; ++a) {
    for (std::size_t b = 0; b < kd; ++b) {
      Complex sum = 0.0;
      for (std::size_t e : tr_off) {
        sum += rho.entries()(static_cast<Eigen::Index>(keep_off[a] + e),
                             static_cast<Eigen::Index>(keep_off[b] + e));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = sum;
    }
  }
  // Round-off can leave a tiny Hermiticity/trace residue; symmetrize.
  out = ((out + out.adjoint().eval()) / 2.0).eval();
  std::vector<std::size_t> sorted_keep;
  for (std::size_t k = 0; k < m; ++k) {
    if (kept[k]) sorted_keep.push_back(dims[k]);
  }
  return DensityMatrix(CompositeSpace(sorted_keep), std::move(out),
                       rho.basis_label());
}

Complex expectation(const OperatorMatrix& op, const StateVector& psi) {
  check_same_space(op.space(), psi.space(), "expectation");
  return psi.amplitudes().dot(op.entries() * psi.amplitudes());
}

SpectralDecomposition spectral_decompose(const OperatorMatrix& h) {
  if (!h.is_hermitian()) {
    throw std::domain_error("spectral_decompose: operator not flagged hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.entries());
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("spectral_decompose: eigensolver failed");
  }
  return SpectralDecomposition{es.eigenvalues(), es.eigenvectors()};
}

double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b) {
  check_same_space(a.space(), b.space(), "commutator_norm");
  Matrix c = a.entries() * b.entries() - b.entries() * a.entries();
  return c.cwiseAbs().maxCoeff();
}

Complex overlap(const StateVector& a, const StateVector& b) {
  check_same_space(a.space(), b.space(), "overlap");
  return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(overlap(a, b));
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace decosim
