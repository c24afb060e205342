// Copyright 2026 The avqclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

#include "avqclab/linalg.hpp"
#include "avqclab/types.hpp"

namespace avqc {

/// Unit-norm state vector.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes, const Tolerances& tol = kTol);

  Eigen::Index dim() const { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  /// |x><x|
  ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  ComplexVector amplitudes_;
};

/// Positive semidefinite, unit-trace operator. The constructor validates and
/// never renormalizes.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix matrix, const Tolerances& tol = kTol);
  explicit DensityMatrix(const PureState& psi);

  static DensityMatrix maximally_mixed(Eigen::Index dim);
  static DensityMatrix basis(Eigen::Index dim, Eigen::Index i);

  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  struct Unchecked {};
  DensityMatrix(ComplexMatrix matrix, Unchecked) : matrix_(std::move(matrix)) {}

  ComplexMatrix matrix_;
};

/// CPTP map in Kraus form, K_k : C^dim_in -> C^dim_out.
class QuantumChannel {
 public:
  QuantumChannel(Eigen::Index dim_in, Eigen::Index dim_out, std::vector<ComplexMatrix> kraus,
                 const Tolerances& tol = kTol);

  Eigen::Index dim_in() const { return dim_in_; }
  Eigen::Index dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  /// Linear action sum_k K X K^dagger on an arbitrary dim_in x dim_in operator.
  ComplexMatrix apply(const ComplexMatrix& op) const;

 private:
  Eigen::Index dim_in_;
  Eigen::Index dim_out_;
  std::vector<ComplexMatrix> kraus_;
};

/// Measurement with elements summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<ComplexMatrix> elements, const Tolerances& tol = kTol);

  Eigen::Index dim() const { return elements_.front().rows(); }
  std::size_t size() const { return elements_.size(); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const ComplexMatrix& operator[](std::size_t i) const { return elements_[i]; }

 private:
  std::vector<ComplexMatrix> elements_;
};

DensityMatrix apply_channel(const QuantumChannel& ch, const DensityMatrix& rho);

/// Kraus family: all products K_{k1} (x) ... (x) K_{kn}, first factor most significant.
QuantumChannel tensor_channel(std::span<const QuantumChannel> chs);

/// Channel with action sum_s q(s) N_s; Kraus operators scaled by sqrt(q(s)).
QuantumChannel mix_channels(std::span<const QuantumChannel> chs, const ProbabilityVector& q);

/// tr{D_i rho} for every element.
ProbabilityVector measure(const Povm& povm, const DensityMatrix& rho);

/// sum_{ij} |i><j| (x) N(|i><j|).
ComplexMatrix choi_matrix(const QuantumChannel& ch);
bool choi_is_psd(const QuantumChannel& ch, Real tol = kTol.psd);

/// Throws ValidationError unless q has `size` nonnegative entries summing to 1.
void validate_probability_vector(const ProbabilityVector& q, Eigen::Index size, const char* what,
                                 const Tolerances& tol = kTol);

void check_dimension_cap(Eigen::Index dim, const char* what);

namespace channels {

QuantumChannel identity(Eigen::Index dim);
QuantumChannel unitary(const ComplexMatrix& u);
/// Qubit bit flip: rho -> (1-p) rho + p X rho X.
QuantumChannel bit_flip(Real p);
/// Full depolarization to I/d; Kraus operators are the d^2 Weyl operators / d.
QuantumChannel completely_depolarizing(Eigen::Index dim);
/// Replacement channel rho -> tr(rho) sigma.
QuantumChannel constant(Eigen::Index dim_in, const DensityMatrix& sigma);

}  // namespace channels

namespace povms {

Povm computational(Eigen::Index dim);
/// Rank-one projective measurement onto the columns of an orthonormal basis.
Povm projective(const ComplexMatrix& basis_columns);

}  // namespace povms

namespace paulis {

ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();

}  // namespace paulis

}  // namespace avqc
