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

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "decosim/errors.hpp"

namespace decosim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Dense matrices only; everything in this library fits comfortably below
// this cap and sparsity would buy nothing at these sizes.
inline constexpr std::size_t kMaxTotalDim = 4096;

inline constexpr double kNormTol = 1e-10;
inline constexpr double kHermitianTol = 1e-12;

// Ordered list of subsystem dimensions. The first-listed subsystem varies
// slowest in the composite (Kronecker) index.
class CompositeSpace {
 public:
  explicit CompositeSpace(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total_dim() const { return total_dim_; }
  std::size_t subsystem_count() const { return dims_.size(); }

  bool operator==(const CompositeSpace& other) const {
    return dims_ == other.dims_;
  }
  bool operator!=(const CompositeSpace& other) const {
    return !(*this == other);
  }

  // Concatenated space A ++ B, as produced by tensor products.
  static CompositeSpace joined(const CompositeSpace& a,
                               const CompositeSpace& b);

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_dim_ = 1;
};

// Normalized amplitude vector over a composite space, stamped with the
// simulation time it describes.
class StateVector {
 public:
  StateVector(CompositeSpace space, Vector amplitudes, double time = 0.0);

  // Normalizes before constructing instead of rejecting.
  static StateVector normalized(CompositeSpace space, Vector amplitudes,
                                double time = 0.0);

  const CompositeSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amplitudes_; }
  double time() const { return time_; }

 private:
  CompositeSpace space_;
  Vector amplitudes_;
  double time_;
};

// Square operator tagged with the space it acts on. When the hermitian
// flag is set the entries are checked against it at construction.
class OperatorMatrix {
 public:
  OperatorMatrix(CompositeSpace space, Matrix entries, bool hermitian);

  static OperatorMatrix identity(const CompositeSpace& space);

  const CompositeSpace& space() const { return space_; }
  const Matrix& entries() const { return entries_; }
  bool is_hermitian() const { return hermitian_; }

 private:
  CompositeSpace space_;
  Matrix entries_;
  bool hermitian_;
};

// Eigenvalues ascending, eigenvectors as the corresponding unitary columns.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

// Hermitian, unit-trace, positive-semidefinite matrix with a label naming
// the representation basis ("energy", "position", ...).
class DensityMatrix {
 public:
  DensityMatrix(CompositeSpace space, Matrix entries,
                std::string basis_label = "");

  static DensityMatrix from_state(const StateVector& psi,
                                  std::string basis_label = "");

  const CompositeSpace& space() const { return space_; }
  const Matrix& entries() const { return entries_; }
  const std::string& basis_label() const { return basis_label_; }

 private:
  CompositeSpace space_;
  Matrix entries_;
  std::string basis_label_;
};

// Kronecker product, a's indices slowest. Result space is dims(A) ++ dims(B).
OperatorMatrix tensor_product(const OperatorMatrix& a, const OperatorMatrix& b);
StateVector tensor_product(const StateVector& a, const StateVector& b);

// Embed an operator acting on a contiguous run of subsystems (starting at
// `first_subsystem`) into `full`, identity elsewhere.
OperatorMatrix lift_operator(const OperatorMatrix& op,
                             const CompositeSpace& full,
                             std::size_t first_subsystem);

// Trace out every subsystem not listed in `keep`. `keep` must be a
// nonempty subset of subsystem indices; original ordering is preserved.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::size_t>& keep);

Complex expectation(const OperatorMatrix& op, const StateVector& psi);

SpectralDecomposition spectral_decompose(const OperatorMatrix& h);

// Max-entry magnitude of AB - BA.
double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b);

// <a|b>
Complex overlap(const StateVector& a, const StateVector& b);
double fidelity(const StateVector& a, const StateVector& b);

double max_abs(const Matrix& m);

}  // namespace decosim
