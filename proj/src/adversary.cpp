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

#include "avqclab/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "avqclab/info.hpp"
#include "avqclab/parallel.hpp"
#include "avqclab/random.hpp"

namespace avqc {

namespace {

Real trace_product(const ComplexMatrix& hermitian, const ComplexMatrix& op) { return hs_inner(hermitian, op).real(); }

void check_block(const Avqc& avqc, std::size_t l, Eigen::Index in_dim, Eigen::Index out_dim,
                 std::span<const std::size_t> seq, const char* what) {
  if (seq.size() != l) throw DimensionError(std::string(what) + ": sequence length differs from the block length");
  for (std::size_t s : seq) {
    if (s >= avqc.size()) throw ValidationError(std::string(what) + ": state index out of range");
  }
  const auto expect_in = static_cast<Eigen::Index>(bounded_power(avqc.dim_in(), l, kMaxDimension));
  const auto expect_out = static_cast<Eigen::Index>(bounded_power(avqc.dim_out(), l, kMaxDimension));
  if (in_dim != expect_in || out_dim != expect_out) {
    throw DimensionError(std::string(what) + ": code dimensions do not match the channel family at this l");
  }
}

// p^prefix(x, y) for every pair of prefix indices.
RealMatrix prefix_joint(const BipartiteSource& src, std::size_t prefix_len, std::size_t xs, std::size_t ys) {
  RealMatrix out(xs, ys);
  for (std::size_t xi = 0; xi < xs; ++xi) {
    const auto xd = index_to_digits(xi, src.x_size(), prefix_len);
    for (std::size_t yi = 0; yi < ys; ++yi) {
      out(xi, yi) = src.block_probability(xd, index_to_digits(yi, src.y_size(), prefix_len));
    }
  }
  return out;
}

Real clamp_unit(Real v) { return std::clamp<Real>(v, 0.0, 1.0); }

}  // namespace

const char* to_string(SearchMethod m) { return m == SearchMethod::kExhaustive ? "exhaustive" : "greedy"; }

RealVector message_successes(const Avqc& avqc, const DeterministicCode& code, std::span<const std::size_t> seq) {
  check_block(avqc, code.l(), code.codeword(0).dim(), code.decoder().dim(), seq, "message_successes");
  RealVector out(code.message_count());
  for (std::size_t i = 0; i < code.message_count(); ++i) {
    out(i) = trace_product(code.decoder()[i], apply_sequence(avqc, seq, code.codeword(i).matrix()));
  }
  return out;
}

RealVector message_successes(const Avqc& avqc, const RandomCode& code, std::span<const std::size_t> seq) {
  RealVector out = RealVector::Zero(code.message_count());
  for (std::size_t c = 0; c < code.size(); ++c) {
    if (code.weights()(c) == 0.0) continue;
    out += code.weights()(c) * message_successes(avqc, code.code(c), seq);
  }
  return out;
}

RealVector message_successes(const Avqc& avqc, const CorrelatedCode& code, std::span<const std::size_t> seq) {
  check_block(avqc, code.l(), code.encoder(0).front().dim(), code.decoder(0).dim(), seq, "message_successes");
  const RealMatrix joint = prefix_joint(code.source(), code.prefix_len(), code.x_tables(), code.y_tables());
  RealVector out = RealVector::Zero(code.message_count());
  for (std::size_t xi = 0; xi < code.x_tables(); ++xi) {
    if (joint.row(xi).maxCoeff() == 0.0) continue;
    for (std::size_t i = 0; i < code.message_count(); ++i) {
      const ComplexMatrix received = apply_sequence(avqc, seq, code.encoder(xi)[i].matrix());
      for (std::size_t yi = 0; yi < code.y_tables(); ++yi) {
        if (joint(xi, yi) == 0.0) continue;
        out(i) += joint(xi, yi) * trace_product(code.decoder(yi)[i], received);
      }
    }
  }
  return out;
}

RealVector message_successes(const Avqc& avqc, const CorrelatedEntanglementCode& code,
                             std::span<const std::size_t> seq) {
  check_block(avqc, code.l(), code.encoder(0).dim_out(), code.decoder(0).dim_in(), seq, "message_successes");
  const RealMatrix joint = prefix_joint(code.source(), code.prefix_len(), code.x_tables(), code.y_tables());
  const auto action = [&](const ComplexMatrix& op) {
    ComplexMatrix out = ComplexMatrix::Zero(code.reference_dim(), code.reference_dim());
    for (std::size_t xi = 0; xi < code.x_tables(); ++xi) {
      if (joint.row(xi).maxCoeff() == 0.0) continue;
      const ComplexMatrix received = apply_sequence(avqc, seq, code.encoder(xi).apply(op));
      for (std::size_t yi = 0; yi < code.y_tables(); ++yi) {
        if (joint(xi, yi) != 0.0) out += joint(xi, yi) * code.decoder(yi).apply(received);
      }
    }
    return out;
  };
  RealVector out(1);
  out(0) = entanglement_fidelity_maximally_mixed(code.reference_dim(), action);
  return out;
}

ErrorReport evaluate_sequences(std::size_t states, std::size_t l, const SuccessFunction& success,
                               const EvaluationOptions& opts) {
  if (states == 0 || l == 0) throw ValidationError("evaluate_code: empty state set or zero block length");
  const std::size_t count = bounded_power(states, l, std::max(opts.budget, kDefaultEnumerationBudget));
  const bool exhaustive =
      opts.mode == SearchMode::kExhaustive || (opts.mode == SearchMode::kAuto && count <= opts.budget);
  if (opts.mode == SearchMode::kExhaustive && count > opts.budget) {
    throw BudgetExceeded("evaluate_code: |S|^l = " + std::to_string(count) + " exceeds the exhaustive budget");
  }

  ErrorReport report;
  Real worst_min = 1.0;
  if (exhaustive) {
    std::vector<Real> avg(count);
    std::vector<Real> lowest(count);
    parallel_for(count, [&](std::size_t idx) {
      const RealVector s = success(index_to_digits(idx, states, l));
      avg[idx] = clamp_unit(s.mean());
      lowest[idx] = clamp_unit(s.minCoeff());
    });
    std::size_t arg_avg = 0;
    std::size_t arg_min = 0;
    for (std::size_t idx = 1; idx < count; ++idx) {
      if (avg[idx] < avg[arg_avg]) arg_avg = idx;
      if (lowest[idx] < lowest[arg_min]) arg_min = idx;
    }
    report.avg_success_worst = avg[arg_avg];
    report.worst_state_seq = index_to_digits(arg_avg, states, l);
    worst_min = lowest[arg_min];
    report.max_error_state_seq = index_to_digits(arg_min, states, l);
    report.sequences_evaluated = count;
    report.method = SearchMethod::kExhaustive;
  } else {
    // Coordinate descent on the average success from each constant start.
    report.method = SearchMethod::kGreedy;
    report.avg_success_worst = 2.0;
    worst_min = 2.0;
    for (std::size_t start = 0; start < states; ++start) {
      StateSequence seq(l, start);
      auto score = [&](const StateSequence& cand) {
        const RealVector s = success(cand);
        ++report.sequences_evaluated;
        const Real lo = clamp_unit(s.minCoeff());
        if (lo < worst_min) {
          worst_min = lo;
          report.max_error_state_seq = cand;
        }
        return clamp_unit(s.mean());
      };
      Real value = score(seq);
      bool improved = true;
      for (std::size_t pass = 0; improved && pass < opts.max_greedy_passes; ++pass) {
        improved = false;
        for (std::size_t pos = 0; pos < l; ++pos) {
          for (std::size_t t = 0; t < states; ++t) {
            if (t == seq[pos]) continue;
            StateSequence cand = seq;
            cand[pos] = t;
            const Real v = score(cand);
            if (v < value - 1e-15) {
              value = v;
              seq = std::move(cand);
              improved = true;
            }
          }
        }
      }
      if (value < report.avg_success_worst) {
        report.avg_success_worst = value;
        report.worst_state_seq = seq;
      }
    }
  }
  report.max_error_worst = 1.0 - worst_min;
  return report;
}

ErrorReport evaluate_code(const Avqc& avqc, const DeterministicCode& code, const EvaluationOptions& opts) {
  return evaluate_sequences(
      avqc.size(), code.l(), [&](std::span<const std::size_t> s) { return message_successes(avqc, code, s); }, opts);
}

ErrorReport evaluate_code(const Avqc& avqc, const RandomCode& code, const EvaluationOptions& opts) {
  return evaluate_sequences(
      avqc.size(), code.l(), [&](std::span<const std::size_t> s) { return message_successes(avqc, code, s); }, opts);
}

ErrorReport evaluate_code(const Avqc& avqc, const CorrelatedCode& code, const EvaluationOptions& opts) {
  return evaluate_sequences(
      avqc.size(), code.l(), [&](std::span<const std::size_t> s) { return message_successes(avqc, code, s); }, opts);
}

ErrorReport evaluate_code(const Avqc& avqc, const CorrelatedEntanglementCode& code, const EvaluationOptions& opts) {
  return evaluate_sequences(
      avqc.size(), code.l(), [&](std::span<const std::size_t> s) { return message_successes(avqc, code, s); }, opts);
}

DeterministicCode permute_messages(const DeterministicCode& code, std::span<const std::size_t> tau) {
  const std::size_t m = code.message_count();
  if (tau.size() != m) throw DimensionError("permute_messages: permutation size differs from message count");
  std::vector<bool> seen(m, false);
  std::vector<DensityMatrix> encoder;
  std::vector<ComplexMatrix> elements;
  for (std::size_t i = 0; i < m; ++i) {
    if (tau[i] >= m || seen[tau[i]]) throw ValidationError("permute_messages: not a permutation");
    seen[tau[i]] = true;
    encoder.push_back(code.codeword(tau[i]));
    elements.push_back(code.decoder()[tau[i]]);
  }
  return DeterministicCode(code.l(), std::move(encoder), Povm(std::move(elements)));
}

RandomCode permutation_symmetrize(const RandomCode& code, const SymmetrizeOptions& opts) {
  const std::size_t m = code.message_count();
  std::vector<DeterministicCode> support;
  std::vector<Real> weights;
  std::vector<std::size_t> tau(m);
  if (!opts.sampled) {
    std::size_t perms = 1;
    for (std::size_t k = 2; k <= m; ++k) {
      if (perms > opts.budget / k) throw BudgetExceeded("permutation_symmetrize: M! exceeds the budget");
      perms *= k;
    }
    if (perms > opts.budget / code.size()) {
      throw BudgetExceeded("permutation_symmetrize: M! times support size exceeds the budget");
    }
    for (std::size_t c = 0; c < code.size(); ++c) {
      std::iota(tau.begin(), tau.end(), 0);
      do {
        support.push_back(permute_messages(code.code(c), tau));
        weights.push_back(code.weights()(c) / Real(perms));
      } while (std::next_permutation(tau.begin(), tau.end()));
    }
  } else {
    if (opts.samples == 0) throw ValidationError("permutation_symmetrize: sampled mode needs samples > 0");
    if (opts.samples > opts.budget / code.size()) {
      throw BudgetExceeded("permutation_symmetrize: samples times support size exceeds the budget");
    }
    Rng rng(opts.seed);
    for (std::size_t k = 0; k < opts.samples; ++k) {
      std::iota(tau.begin(), tau.end(), 0);
      for (std::size_t i = m; i > 1; --i) std::swap(tau[i - 1], tau[rng.below(i)]);
      for (std::size_t c = 0; c < code.size(); ++c) {
        support.push_back(permute_messages(code.code(c), tau));
        weights.push_back(code.weights()(c) / Real(opts.samples));
      }
    }
  }
  ProbabilityVector w = Eigen::Map<const RealVector>(weights.data(), static_cast<Eigen::Index>(weights.size()));
  return RandomCode(std::move(support), w / w.sum());
}

Real reduction_success_bound(std::size_t k, Real eps, Real eps_l, std::size_t l, Real rate, std::size_t states) {
  const Real exponent = -Real(k) * (eps - 2.0 * eps_l) + Real(l) * (rate + eps + std::log2(Real(states)));
  return 1.0 - std::exp2(exponent);
}

ReductionTable::ReductionTable(const RandomCode& code, const Avqc& avqc, std::size_t budget)
    : weights_(code.weights()), messages_(code.message_count()) {
  sequences_ = bounded_power(avqc.size(), code.l(), budget);
  if (sequences_ > budget) throw BudgetExceeded("random_code_reduction: |S|^l exceeds the exhaustive budget");
  success_.assign(code.size(), RealMatrix(sequences_, messages_));
  parallel_for(sequences_, [&](std::size_t idx) {
    const StateSequence seq = index_to_digits(idx, avqc.size(), code.l());
    for (std::size_t c = 0; c < code.size(); ++c) {
      success_[c].row(idx) = message_successes(avqc, code.code(c), seq).transpose();
    }
  });
  RealMatrix mean = RealMatrix::Zero(sequences_, messages_);
  for (std::size_t c = 0; c < code.size(); ++c) mean += weights_(c) * success_[c];
  eps_l_ = std::max<Real>(0.0, 1.0 - mean.minCoeff());
}

ReductionTable::Trial ReductionTable::trial(std::size_t k, Real eps, std::uint64_t seed) const {
  if (k == 0) throw ValidationError("random_code_reduction: K must be positive");
  Rng rng(seed);
  Trial out;
  RealMatrix total = RealMatrix::Zero(sequences_, messages_);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t c = rng.categorical(weights_);
    out.indices.push_back(c);
    total += success_[c];
  }
  out.worst_empirical_success = total.minCoeff() / Real(k);
  out.verified = out.worst_empirical_success >= 1.0 - eps - 1e-12;
  return out;
}

ReductionResult random_code_reduction(const RandomCode& code, const Avqc& avqc, std::size_t l, std::size_t k,
                                      Real eps, std::uint64_t seed, std::size_t budget) {
  if (l != code.l()) throw DimensionError("random_code_reduction: l differs from the code's block length");
  const ReductionTable table(code, avqc, budget);
  if (!(eps > 2.0 * table.eps_l())) {
    throw ValidationError("random_code_reduction: need eps > 2 eps_l, got eps = " + std::to_string(eps) +
                          ", eps_l = " + std::to_string(table.eps_l()));
  }
  const ReductionTable::Trial t = table.trial(k, eps, seed);
  ReductionResult out;
  for (std::size_t c : t.indices) out.codes.push_back(code.code(c));
  out.indices = t.indices;
  out.verified = t.verified;
  out.eps_l = table.eps_l();
  out.worst_empirical_success = t.worst_empirical_success;
  return out;
}

std::pair<std::size_t, std::size_t> two_phase_split(Real c, std::size_t l) {
  if (!(c > 0.0) || l == 0) throw ValidationError("two_phase_split: need c > 0 and l >= 1");
  const auto m = static_cast<std::size_t>(std::floor((2.0 / c) * std::log2(Real(l)) + 1e-12));
  if (m > l) throw ValidationError("two_phase_split: m(l) = " + std::to_string(m) + " exceeds l");
  return {m, l - m};
}

namespace {

void check_composition(const CorrelatedCode& cr_code, std::size_t payload_size, std::size_t payload_l,
                       std::size_t target_l) {
  if (payload_size == 0) throw ValidationError("compose_two_phase: empty payload");
  if (cr_code.message_count() < payload_size) {
    throw DimensionError("compose_two_phase: correlated code carries " + std::to_string(cr_code.message_count()) +
                         " messages, fewer than the " + std::to_string(payload_size) + " payload codes");
  }
  if (payload_l + cr_code.l() != target_l) {
    throw DimensionError("compose_two_phase: payload uses + correlated uses must equal target_l");
  }
}

// Decoder elements of the correlated code with the surplus routed to index 0.
std::vector<ComplexMatrix> folded_elements(const Povm& povm, std::size_t keep) {
  std::vector<ComplexMatrix> out(povm.elements().begin(), povm.elements().begin() + static_cast<long>(keep));
  for (std::size_t i = keep; i < povm.size(); ++i) out[0] += povm[i];
  return out;
}

}  // namespace

CorrelatedCode compose_two_phase(const CorrelatedCode& cr_code, const RandomCode& payload, std::size_t target_l) {
  const std::size_t big_l = payload.size();
  check_composition(cr_code, big_l, payload.l(), target_l);
  for (Eigen::Index c = 0; c < payload.weights().size(); ++c) {
    if (std::abs(payload.weights()(c) - 1.0 / Real(big_l)) > 1e-12) {
      throw ValidationError("compose_two_phase: payload weights must be uniform");
    }
  }
  const Eigen::Index din = payload.code(0).codeword(0).dim() * cr_code.encoder(0).front().dim();
  const Eigen::Index dout = payload.code(0).decoder().dim() * cr_code.decoder(0).dim();
  check_dimension_cap(std::max(din, dout), "compose_two_phase");
  const std::size_t m = payload.message_count();

  std::vector<std::vector<DensityMatrix>> encoders;
  for (std::size_t xi = 0; xi < cr_code.x_tables(); ++xi) {
    std::vector<DensityMatrix> row;
    for (std::size_t j = 0; j < m; ++j) {
      ComplexMatrix rho = ComplexMatrix::Zero(din, din);
      for (std::size_t i = 0; i < big_l; ++i) {
        rho += kron(payload.code(i).codeword(j).matrix(), cr_code.encoder(xi)[i].matrix()) / Real(big_l);
      }
      row.emplace_back(std::move(rho));
    }
    encoders.push_back(std::move(row));
  }

  std::vector<Povm> decoders;
  for (std::size_t yi = 0; yi < cr_code.y_tables(); ++yi) {
    const std::vector<ComplexMatrix> cr = folded_elements(cr_code.decoder(yi), big_l);
    std::vector<ComplexMatrix> elements;
    for (std::size_t j = 0; j < m; ++j) {
      ComplexMatrix d = ComplexMatrix::Zero(dout, dout);
      for (std::size_t i = 0; i < big_l; ++i) d += kron(payload.code(i).decoder()[j], cr[i]);
      elements.push_back(std::move(d));
    }
    decoders.emplace_back(std::move(elements));
  }
  return CorrelatedCode(target_l, cr_code.r(), cr_code.source(), std::move(encoders), std::move(decoders),
                        cr_code.prefix_len());
}

CorrelatedEntanglementCode compose_two_phase_entanglement(const CorrelatedCode& cr_code,
                                                          std::span<const EntanglementBlock> payload,
                                                          std::size_t target_l) {
  const std::size_t big_l = payload.size();
  if (big_l == 0) throw ValidationError("compose_two_phase_entanglement: empty payload");
  const Eigen::Index f = payload.front().encoder.dim_in();
  const Eigen::Index d_enc = payload.front().encoder.dim_out();
  const Eigen::Index d_dec = payload.front().decoder.dim_in();
  for (const auto& block : payload) {
    if (block.encoder.dim_in() != f || block.decoder.dim_out() != f || block.encoder.dim_out() != d_enc ||
        block.decoder.dim_in() != d_dec) {
      throw DimensionError("compose_two_phase_entanglement: payload blocks differ in dimensions");
    }
  }
  // Payload block length from the encoder dimension is not recoverable without
  // the channel family, so the split is checked through the correlated part.
  if (cr_code.l() >= target_l) throw DimensionError("compose_two_phase_entanglement: no uses left for the payload");
  check_composition(cr_code, big_l, target_l - cr_code.l(), target_l);
  const Eigen::Index m_in = cr_code.encoder(0).front().dim();
  const Eigen::Index m_out = cr_code.decoder(0).dim();
  check_dimension_cap(std::max(d_enc * m_in, d_dec * m_out), "compose_two_phase_entanglement");

  std::vector<QuantumChannel> encoders;
  for (std::size_t xi = 0; xi < cr_code.x_tables(); ++xi) {
    std::vector<ComplexMatrix> kraus;
    for (std::size_t i = 0; i < big_l; ++i) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(cr_code.encoder(xi)[i].matrix());
      for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
        const Real lambda = eig.eigenvalues()(k);
        if (lambda <= 1e-15) continue;
        const ComplexMatrix ket = eig.eigenvectors().col(k);
        for (const auto& a : payload[i].encoder.kraus()) {
          kraus.push_back(std::sqrt(lambda / Real(big_l)) * kron(a, ket));
        }
      }
    }
    encoders.emplace_back(f, d_enc * m_in, std::move(kraus));
  }

  std::vector<QuantumChannel> decoders;
  for (std::size_t yi = 0; yi < cr_code.y_tables(); ++yi) {
    const std::vector<ComplexMatrix> cr = folded_elements(cr_code.decoder(yi), big_l);
    std::vector<ComplexMatrix> kraus;
    for (std::size_t i = 0; i < big_l; ++i) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(cr[i]));
      for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
        const Real mu = eig.eigenvalues()(k);
        if (mu <= 1e-15) continue;
        const ComplexMatrix bra = eig.eigenvectors().col(k).adjoint();
        for (const auto& r : payload[i].decoder.kraus()) kraus.push_back(std::sqrt(mu) * kron(r, bra));
      }
    }
    decoders.emplace_back(d_dec * m_out, f, std::move(kraus));
  }
  return CorrelatedEntanglementCode(target_l, cr_code.r(), cr_code.source(), std::move(encoders),
                                    std::move(decoders), cr_code.prefix_len());
}

}  // namespace avqc
