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

#include "avqclab/codes.hpp"

namespace avqc {

namespace {

std::size_t table_count(std::size_t alphabet, std::size_t prefix_len) {
  const std::size_t count = bounded_power(alphabet, prefix_len, kDefaultEnumerationBudget);
  if (count > kDefaultEnumerationBudget) throw BudgetExceeded("correlated code: prefix tables exceed budget");
  return count;
}

void check_prefix(std::size_t l, std::size_t r, std::size_t prefix_len) {
  if (l == 0 || r == 0) throw ValidationError("correlated code: l and r must be positive");
  if (prefix_len > l / r) throw ValidationError("correlated code: prefix is longer than n = floor(l/r)");
}

}  // namespace

DeterministicCode::DeterministicCode(std::size_t l, std::vector<DensityMatrix> encoder, Povm decoder)
    : l_(l), encoder_(std::move(encoder)), decoder_(std::move(decoder)) {
  if (l_ == 0) throw ValidationError("code: block length must be positive");
  if (encoder_.empty()) throw ValidationError("code: at least one message is required");
  if (decoder_.size() != encoder_.size()) {
    throw DimensionError("code: decoder has " + std::to_string(decoder_.size()) + " elements for " +
                         std::to_string(encoder_.size()) + " messages");
  }
  for (const auto& rho : encoder_) {
    if (rho.dim() != encoder_.front().dim()) throw DimensionError("code: codewords differ in dimension");
  }
}

RandomCode::RandomCode(std::vector<DeterministicCode> support, ProbabilityVector weights, const Tolerances& tol)
    : support_(std::move(support)), weights_(std::move(weights)) {
  if (support_.empty()) throw ValidationError("random code: empty support");
  validate_probability_vector(weights_, static_cast<Eigen::Index>(support_.size()), "random code weights", tol);
  for (const auto& c : support_) {
    if (c.l() != support_.front().l() || c.message_count() != support_.front().message_count() ||
        c.codeword(0).dim() != support_.front().codeword(0).dim() ||
        c.decoder().dim() != support_.front().decoder().dim()) {
      throw DimensionError("random code: support codes differ in l, M or dimensions");
    }
  }
}

RandomCode::RandomCode(DeterministicCode code)
    : RandomCode(std::vector<DeterministicCode>{std::move(code)}, ProbabilityVector::Ones(1)) {}

CorrelatedCode::CorrelatedCode(std::size_t l, std::size_t r, BipartiteSource source,
                               std::vector<std::vector<DensityMatrix>> encoders, std::vector<Povm> decoders,
                               std::size_t prefix_len)
    : l_(l), r_(r), prefix_len_(prefix_len), source_(std::move(source)), encoders_(std::move(encoders)),
      decoders_(std::move(decoders)) {
  check_prefix(l_, r_, prefix_len_);
  if (encoders_.size() != table_count(source_.x_size(), prefix_len_) ||
      decoders_.size() != table_count(source_.y_size(), prefix_len_)) {
    throw DimensionError("correlated code: need one encoder per x^prefix and one decoder per y^prefix");
  }
  const std::size_t m = encoders_.front().size();
  if (m == 0) throw ValidationError("correlated code: at least one message is required");
  for (const auto& enc : encoders_) {
    if (enc.size() != m) throw DimensionError("correlated code: encoders differ in message count");
    for (const auto& rho : enc) {
      if (rho.dim() != encoders_.front().front().dim()) throw DimensionError("correlated code: codeword dims differ");
    }
  }
  for (const auto& dec : decoders_) {
    if (dec.size() != m || dec.dim() != decoders_.front().dim()) {
      throw DimensionError("correlated code: decoders must have one element per message and a common dim");
    }
  }
}

CorrelatedEntanglementCode::CorrelatedEntanglementCode(std::size_t l, std::size_t r, BipartiteSource source,
                                                       std::vector<QuantumChannel> encoders,
                                                       std::vector<QuantumChannel> decoders, std::size_t prefix_len)
    : l_(l), r_(r), prefix_len_(prefix_len), source_(std::move(source)), encoders_(std::move(encoders)),
      decoders_(std::move(decoders)) {
  check_prefix(l_, r_, prefix_len_);
  if (encoders_.size() != table_count(source_.x_size(), prefix_len_) ||
      decoders_.size() != table_count(source_.y_size(), prefix_len_)) {
    throw DimensionError("entanglement code: need one encoder per x^prefix and one decoder per y^prefix");
  }
  const Eigen::Index f = encoders_.front().dim_in();
  for (const auto& e : encoders_) {
    if (e.dim_in() != f || e.dim_out() != encoders_.front().dim_out()) {
      throw DimensionError("entanglement code: encoder dimensions differ");
    }
  }
  for (const auto& d : decoders_) {
    if (d.dim_out() != f || d.dim_in() != decoders_.front().dim_in()) {
      throw DimensionError("entanglement code: decoders must return to the reference space");
    }
  }
}

}  // namespace avqc
