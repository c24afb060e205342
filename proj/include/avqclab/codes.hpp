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

#include <vector>

#include "avqclab/quantum.hpp"
#include "avqclab/source.hpp"

namespace avqc {

/// Encoder i -> rho_i on H^{(x)l} and decoding POVM {D_i} on K^{(x)l}.
class DeterministicCode {
 public:
  DeterministicCode(std::size_t l, std::vector<DensityMatrix> encoder, Povm decoder);

  std::size_t l() const { return l_; }
  std::size_t message_count() const { return encoder_.size(); }
  const std::vector<DensityMatrix>& encoder() const { return encoder_; }
  const DensityMatrix& codeword(std::size_t i) const { return encoder_[i]; }
  const Povm& decoder() const { return decoder_; }

 private:
  std::size_t l_;
  std::vector<DensityMatrix> encoder_;
  Povm decoder_;
};

/// Finitely supported distribution over deterministic codes of common (l, M).
class RandomCode {
 public:
  RandomCode(std::vector<DeterministicCode> support, ProbabilityVector weights, const Tolerances& tol = kTol);
  explicit RandomCode(DeterministicCode code);

  std::size_t l() const { return support_.front().l(); }
  std::size_t message_count() const { return support_.front().message_count(); }
  std::size_t size() const { return support_.size(); }
  const std::vector<DeterministicCode>& support() const { return support_; }
  const DeterministicCode& code(std::size_t c) const { return support_[c]; }
  const ProbabilityVector& weights() const { return weights_; }

 private:
  std::vector<DeterministicCode> support_;
  ProbabilityVector weights_;
};

/// ((X,Y), r)-correlated code on l channel uses with n = floor(l/r) source
/// samples. Encoders and decoders may depend on the first `prefix_len` <= n
/// samples only; tables are indexed by the lexicographic rank of x^prefix,
/// y^prefix. The remaining samples marginalize out.
class CorrelatedCode {
 public:
  CorrelatedCode(std::size_t l, std::size_t r, BipartiteSource source,
                 std::vector<std::vector<DensityMatrix>> encoders, std::vector<Povm> decoders,
                 std::size_t prefix_len);

  std::size_t l() const { return l_; }
  std::size_t r() const { return r_; }
  std::size_t n() const { return l_ / r_; }
  std::size_t prefix_len() const { return prefix_len_; }
  std::size_t message_count() const { return encoders_.front().size(); }
  const BipartiteSource& source() const { return source_; }
  const std::vector<DensityMatrix>& encoder(std::size_t x_index) const { return encoders_[x_index]; }
  const Povm& decoder(std::size_t y_index) const { return decoders_[y_index]; }
  std::size_t x_tables() const { return encoders_.size(); }
  std::size_t y_tables() const { return decoders_.size(); }

 private:
  std::size_t l_;
  std::size_t r_;
  std::size_t prefix_len_;
  BipartiteSource source_;
  std::vector<std::vector<DensityMatrix>> encoders_;
  std::vector<Povm> decoders_;
};

/// Correlated code for entanglement transmission: encoders F -> H^{(x)l},
/// decoders K^{(x)l} -> F, indexed as in CorrelatedCode.
class CorrelatedEntanglementCode {
 public:
  CorrelatedEntanglementCode(std::size_t l, std::size_t r, BipartiteSource source,
                             std::vector<QuantumChannel> encoders, std::vector<QuantumChannel> decoders,
                             std::size_t prefix_len);

  std::size_t l() const { return l_; }
  std::size_t r() const { return r_; }
  std::size_t n() const { return l_ / r_; }
  std::size_t prefix_len() const { return prefix_len_; }
  Eigen::Index reference_dim() const { return encoders_.front().dim_in(); }
  const BipartiteSource& source() const { return source_; }
  const QuantumChannel& encoder(std::size_t x_index) const { return encoders_[x_index]; }
  const QuantumChannel& decoder(std::size_t y_index) const { return decoders_[y_index]; }
  std::size_t x_tables() const { return encoders_.size(); }
  std::size_t y_tables() const { return decoders_.size(); }

 private:
  std::size_t l_;
  std::size_t r_;
  std::size_t prefix_len_;
  BipartiteSource source_;
  std::vector<QuantumChannel> encoders_;
  std::vector<QuantumChannel> decoders_;
};

/// An encoder/decoder pair for one entanglement payload code.
struct EntanglementBlock {
  QuantumChannel encoder;
  QuantumChannel decoder;
};

}  // namespace avqc
