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

#include "avqclab/avqc.hpp"

#include <cmath>
#include <set>

namespace avqc {

namespace {

void require_distinct(const std::vector<std::string>& labels, const char* what) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw ValidationError(std::string(what) + ": duplicate label '" + l + "'");
  }
}

}  // namespace

Avqc::Avqc(std::vector<std::string> states, std::vector<QuantumChannel> channels)
    : states_(std::move(states)), channels_(std::move(channels)) {
  if (states_.empty()) throw ValidationError("avqc: empty state set");
  require_distinct(states_, "avqc");
  if (states_.size() != channels_.size()) throw ValidationError("avqc: label and channel counts differ");
  for (std::size_t s = 1; s < channels_.size(); ++s) {
    if (channels_[s].dim_in() != channels_[0].dim_in() || channels_[s].dim_out() != channels_[0].dim_out()) {
      throw DimensionError("avqc: channel '" + states_[s] + "' has mismatched dimensions");
    }
  }
}

CqChannel::CqChannel(std::vector<std::string> alphabet, std::vector<DensityMatrix> outputs)
    : alphabet_(std::move(alphabet)), outputs_(std::move(outputs)) {
  if (alphabet_.empty()) throw ValidationError("cq channel: empty alphabet");
  require_distinct(alphabet_, "cq channel");
  if (alphabet_.size() != outputs_.size()) throw ValidationError("cq channel: alphabet and output counts differ");
  for (const auto& w : outputs_) {
    if (w.dim() != outputs_.front().dim()) throw DimensionError("cq channel: outputs have different dimensions");
  }
}

AvCqc::AvCqc(std::vector<std::string> states, std::vector<CqChannel> channels)
    : states_(std::move(states)), channels_(std::move(channels)) {
  if (states_.empty()) throw ValidationError("avcqc: empty state set");
  require_distinct(states_, "avcqc");
  if (states_.size() != channels_.size()) throw ValidationError("avcqc: label and channel counts differ");
  for (std::size_t s = 1; s < channels_.size(); ++s) {
    if (channels_[s].alphabet() != channels_[0].alphabet()) {
      throw ValidationError("avcqc: channel '" + states_[s] + "' has a different input alphabet");
    }
    if (channels_[s].dim() != channels_[0].dim()) {
      throw DimensionError("avcqc: channel '" + states_[s] + "' has a different output dimension");
    }
  }
}

ClassicalAvc::ClassicalAvc(std::vector<std::string> states, std::vector<RealMatrix> kernels, const Tolerances& tol)
    : states_(std::move(states)), kernels_(std::move(kernels)) {
  if (states_.empty()) throw ValidationError("classical avc: empty state set");
  require_distinct(states_, "classical avc");
  if (states_.size() != kernels_.size()) throw ValidationError("classical avc: label and kernel counts differ");
  for (std::size_t t = 0; t < kernels_.size(); ++t) {
    const auto& k = kernels_[t];
    if (k.rows() != kernels_[0].rows() || k.cols() != kernels_[0].cols() || k.size() == 0) {
      throw DimensionError("classical avc: kernel '" + states_[t] + "' has a different shape");
    }
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
      if ((k.row(i).array() < 0.0).any() || !k.row(i).allFinite()) {
        throw ValidationError("classical avc: kernel '" + states_[t] + "' has a negative entry");
      }
      if (std::abs(k.row(i).sum() - 1.0) > tol.prob) {
        throw ValidationError("classical avc: kernel '" + states_[t] + "' row " + std::to_string(i) +
                              " is not a probability vector");
      }
    }
  }
}

std::size_t sequence_count(std::size_t states, std::size_t l, std::size_t budget) {
  const std::size_t count = bounded_power(states, l, budget);
  if (count > budget) {
    throw BudgetExceeded(std::to_string(states) + "^" + std::to_string(l) + " sequences exceed budget " +
                         std::to_string(budget));
  }
  return count;
}

std::string sequence_label(const std::vector<std::string>& states, std::span<const std::size_t> seq) {
  std::string out;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (k) out += ',';
    out += states[seq[k]];
  }
  return out;
}

ComplexMatrix apply_sequence(const Avqc& avqc, std::span<const std::size_t> seq, const ComplexMatrix& op) {
  const Eigen::Index din = avqc.dim_in();
  const Eigen::Index dout = avqc.dim_out();
  const std::size_t l = seq.size();
  Eigen::Index expected = 1;
  for (std::size_t k = 0; k < l; ++k) expected *= din;
  if (op.rows() != expected || op.cols() != expected) {
    throw DimensionError("apply_sequence: operator is " + std::to_string(op.rows()) + "-dimensional, expected " +
                         std::to_string(expected));
  }
  ComplexMatrix current = op;
  Eigen::Index left = 1;
  Eigen::Index right = expected / din;
  for (std::size_t k = 0; k < l; ++k) {
    const auto& kraus = avqc.channel(seq[k]).kraus();
    const bool is_identity = kraus.size() == 1 && din == dout &&
                             max_abs_diff(kraus[0], ComplexMatrix::Identity(din, dout)) == 0.0;
    if (!is_identity) {
      ComplexMatrix next = ComplexMatrix::Zero(left * dout * right, left * dout * right);
      for (const auto& kop : kraus) {
        const ComplexMatrix big = embed_local(kop, left, right);
        next.noalias() += big * current * big.adjoint();
      }
      current = std::move(next);
    }
    left *= dout;
    if (k + 1 < l) right /= din;
  }
  return current;
}

Avqc product_avqc(const Avqc& avqc, std::size_t l, std::size_t budget) {
  if (l == 0) throw ValidationError("product_avqc: block length must be positive");
  const std::size_t count = sequence_count(avqc.size(), l, budget);
  std::vector<std::string> labels;
  std::vector<QuantumChannel> chans;
  labels.reserve(count);
  chans.reserve(count);
  std::vector<std::size_t> seq(l, 0);
  do {
    labels.push_back(sequence_label(avqc.states(), seq));
    std::vector<QuantumChannel> factors;
    for (std::size_t s : seq) factors.push_back(avqc.channel(s));
    chans.push_back(tensor_channel(factors));
  } while (next_tuple(seq, avqc.size()));
  return Avqc(std::move(labels), std::move(chans));
}

std::vector<std::vector<std::size_t>> function_alphabet(std::size_t x_count, std::size_t n, std::size_t k,
                                                        std::size_t budget) {
  const std::size_t domain = bounded_power(x_count, n, budget);
  if (domain > budget) throw BudgetExceeded("function alphabet: |X|^n exceeds budget");
  const std::size_t count = bounded_power(k, domain, budget);
  if (count > budget) {
    throw BudgetExceeded("function alphabet: K^(|X|^n) = " + std::to_string(k) + "^" + std::to_string(domain) +
                         " exceeds budget " + std::to_string(budget));
  }
  std::vector<std::vector<std::size_t>> out;
  out.reserve(count);
  std::vector<std::size_t> table(domain, 0);
  do {
    out.push_back(table);
  } while (next_tuple(table, k));
  return out;
}

AvCqc build_associated_avcqc(const Avqc& avqc, std::size_t n, const BipartiteSource& source,
                             std::span<const DensityMatrix> signals, std::size_t budget) {
  if (n == 0) throw ValidationError("associated avcqc: block length must be positive");
  if (signals.empty()) throw ValidationError("associated avcqc: no signal states");
  Eigen::Index din = 1;
  Eigen::Index dout = 1;
  for (std::size_t k = 0; k < n; ++k) {
    din *= avqc.dim_in();
    dout *= avqc.dim_out();
  }
  for (std::size_t k = 0; k < signals.size(); ++k) {
    if (signals[k].dim() != din) {
      throw DimensionError("associated avcqc: signal " + std::to_string(k) + " is not on H^(x)n");
    }
  }
  sequence_count(avqc.size(), n, budget);
  const std::size_t xs = bounded_power(source.x_size(), n, budget);
  const std::size_t ys = bounded_power(source.y_size(), n, budget);
  if (xs > budget || ys > budget) throw BudgetExceeded("associated avcqc: source blocks exceed budget");
  const auto functions = function_alphabet(source.x_size(), n, signals.size(), budget);
  const Eigen::Index flag_dim = static_cast<Eigen::Index>(ys);
  check_dimension_cap(flag_dim * dout, "associated avcqc output");

  // p^n(x^n, y^n) for all blocks
  RealMatrix block_p(xs, ys);
  for (std::size_t xi = 0; xi < xs; ++xi) {
    const auto xd = index_to_digits(xi, source.x_size(), n);
    for (std::size_t yi = 0; yi < ys; ++yi) {
      const auto yd = index_to_digits(yi, source.y_size(), n);
      block_p(xi, yi) = source.block_probability(xd, yd);
    }
  }

  std::vector<std::string> alphabet;
  alphabet.reserve(functions.size());
  for (const auto& f : functions) {
    std::string label;
    for (std::size_t x = 0; x < f.size(); ++x) {
      if (x) label += ',';
      label += std::to_string(f[x]);
    }
    alphabet.push_back(label);
  }

  std::vector<std::string> labels;
  std::vector<CqChannel> chans;
  std::vector<std::size_t> seq(n, 0);
  do {
    labels.push_back(sequence_label(avqc.states(), seq));
    std::vector<ComplexMatrix> images;
    images.reserve(signals.size());
    for (const auto& rho : signals) images.push_back(apply_sequence(avqc, seq, rho.matrix()));
    std::vector<DensityMatrix> outputs;
    outputs.reserve(functions.size());
    for (const auto& f : functions) {
      ComplexMatrix w = ComplexMatrix::Zero(flag_dim * dout, flag_dim * dout);
      for (std::size_t yi = 0; yi < ys; ++yi) {
        auto block = w.block(yi * dout, yi * dout, dout, dout);
        for (std::size_t xi = 0; xi < xs; ++xi) {
          if (block_p(xi, yi) != 0.0) block += block_p(xi, yi) * images[f[xi]];
        }
      }
      outputs.emplace_back(hermitian_part(w));
    }
    chans.emplace_back(alphabet, std::move(outputs));
  } while (next_tuple(seq, avqc.size()));
  return AvCqc(std::move(labels), std::move(chans));
}

ClassicalAvc reduce_to_classical(const Avqc& avqc, std::span<const ReductionComponent> components) {
  if (components.empty()) throw ValidationError("reduce_to_classical: no components");
  const std::size_t inputs = components.front().signals.size();
  const std::size_t outputs = components.front().povm.size();
  if (inputs == 0) throw ValidationError("reduce_to_classical: no signal states");
  Real total_weight = 0.0;
  for (std::size_t z = 0; z < components.size(); ++z) {
    const auto& c = components[z];
    if (c.signals.size() != inputs || c.povm.size() != outputs) {
      throw DimensionError("reduce_to_classical: component " + std::to_string(z) + " has a different arity");
    }
    if (c.povm.dim() != avqc.dim_out()) throw DimensionError("reduce_to_classical: POVM dimension mismatch");
    for (const auto& rho : c.signals) {
      if (rho.dim() != avqc.dim_in()) throw DimensionError("reduce_to_classical: signal dimension mismatch");
    }
    if (!(c.weight >= 0.0)) throw ValidationError("reduce_to_classical: negative weight");
    total_weight += c.weight;
  }
  if (std::abs(total_weight - 1.0) > kTol.prob) throw ValidationError("reduce_to_classical: weights do not sum to 1");

  std::vector<RealMatrix> kernels;
  for (std::size_t t = 0; t < avqc.size(); ++t) {
    RealMatrix u = RealMatrix::Zero(inputs, outputs);
    for (const auto& c : components) {
      for (std::size_t i = 0; i < inputs; ++i) {
        const ComplexMatrix out = avqc.channel(t).apply(c.signals[i].matrix());
        for (std::size_t j = 0; j < outputs; ++j) u(i, j) += c.weight * hs_inner(c.povm[j], out).real();
      }
    }
    // Clear rounding noise below zero so the kernel validates.
    u = u.cwiseMax(0.0);
    kernels.push_back(std::move(u));
  }
  return ClassicalAvc(avqc.states(), std::move(kernels));
}

ClassicalAvc reduce_to_classical(const Avqc& avqc, std::span<const DensityMatrix> signals, const Povm& povm) {
  const ReductionComponent single{std::vector<DensityMatrix>(signals.begin(), signals.end()), povm, 1.0};
  return reduce_to_classical(avqc, std::span<const ReductionComponent>(&single, 1));
}

}  // namespace avqc
