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
#include <string>
#include <vector>

#include "avqclab/quantum.hpp"
#include "avqclab/source.hpp"

namespace avqc {

using StateSequence = std::vector<std::size_t>;

/// Finite family {N_s} of channels sharing input and output spaces.
class Avqc {
 public:
  Avqc(std::vector<std::string> states, std::vector<QuantumChannel> channels);

  std::size_t size() const { return states_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<QuantumChannel>& channels() const { return channels_; }
  const QuantumChannel& channel(std::size_t s) const { return channels_[s]; }
  Eigen::Index dim_in() const { return channels_.front().dim_in(); }
  Eigen::Index dim_out() const { return channels_.front().dim_out(); }

 private:
  std::vector<std::string> states_;
  std::vector<QuantumChannel> channels_;
};

/// Input letter z -> output state W(z).
class CqChannel {
 public:
  CqChannel(std::vector<std::string> alphabet, std::vector<DensityMatrix> outputs);

  std::size_t size() const { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<DensityMatrix>& outputs() const { return outputs_; }
  const DensityMatrix& output(std::size_t z) const { return outputs_[z]; }
  Eigen::Index dim() const { return outputs_.front().dim(); }

 private:
  std::vector<std::string> alphabet_;
  std::vector<DensityMatrix> outputs_;
};

class AvCqc {
 public:
  AvCqc(std::vector<std::string> states, std::vector<CqChannel> channels);

  std::size_t size() const { return states_.size(); }
  std::size_t alphabet_size() const { return channels_.front().size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& alphabet() const { return channels_.front().alphabet(); }
  const std::vector<CqChannel>& channels() const { return channels_; }
  const CqChannel& channel(std::size_t s) const { return channels_[s]; }
  Eigen::Index dim() const { return channels_.front().dim(); }

 private:
  std::vector<std::string> states_;
  std::vector<CqChannel> channels_;
};

/// Arbitrarily varying classical channel; kernel(t)(i, j) = U_t(j|i).
class ClassicalAvc {
 public:
  ClassicalAvc(std::vector<std::string> states, std::vector<RealMatrix> kernels, const Tolerances& tol = kTol);

  std::size_t size() const { return states_.size(); }
  Eigen::Index inputs() const { return kernels_.front().rows(); }
  Eigen::Index outputs() const { return kernels_.front().cols(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<RealMatrix>& kernels() const { return kernels_; }
  const RealMatrix& kernel(std::size_t t) const { return kernels_[t]; }

 private:
  std::vector<std::string> states_;
  std::vector<RealMatrix> kernels_;
};

/// Number of sequences |S|^l; throws BudgetExceeded past `budget`.
std::size_t sequence_count(std::size_t states, std::size_t l, std::size_t budget = kDefaultEnumerationBudget);

/// Label "a,b,c" for s^l = (a, b, c).
std::string sequence_label(const std::vector<std::string>& states, std::span<const std::size_t> seq);

/// N_{s_1} (x) ... (x) N_{s_l} applied to `op` one tensor factor at a time.
/// Never forms the product Kraus family.
ComplexMatrix apply_sequence(const Avqc& avqc, std::span<const std::size_t> seq, const ComplexMatrix& op);

/// All s^l in lexicographic order, channel per s^l the tensor product.
Avqc product_avqc(const Avqc& avqc, std::size_t l, std::size_t budget = kDefaultEnumerationBudget);

/// Function alphabet F(X^n, [K]) in lexicographic order of value tables
/// (value at the lexicographically first x^n is most significant).
std::vector<std::vector<std::size_t>> function_alphabet(std::size_t x_count, std::size_t n, std::size_t k,
                                                        std::size_t budget = kDefaultEnumerationBudget);

/// Associated AVcqC: W_{s^n}(f) = sum p^n(x^n,y^n) |y^n><y^n| (x) N_{s^n}(rho_{f(x^n)}).
/// The flag register comes first and uses the computational basis indexed by
/// the lexicographic rank of y^n.
AvCqc build_associated_avcqc(const Avqc& avqc, std::size_t n, const BipartiteSource& source,
                             std::span<const DensityMatrix> signals,
                             std::size_t budget = kDefaultEnumerationBudget);

/// One (signal set, measurement, weight) triple of a classical reduction.
struct ReductionComponent {
  std::vector<DensityMatrix> signals;
  Povm povm;
  Real weight;
};

/// U_t(j|i) = sum_z w(z) tr{D_j^(z) N_t(rho_i^(z))}.
ClassicalAvc reduce_to_classical(const Avqc& avqc, std::span<const ReductionComponent> components);
ClassicalAvc reduce_to_classical(const Avqc& avqc, std::span<const DensityMatrix> signals, const Povm& povm);

}  // namespace avqc
