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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "avqclab/avqc.hpp"
#include "avqclab/codes.hpp"

namespace avqc {

enum class SearchMethod { kExhaustive, kGreedy };
enum class SearchMode { kAuto, kExhaustive, kGreedy };

const char* to_string(SearchMethod m);

/// Worst case over the jammer's state sequences. For kGreedy the values are
/// bounds on the adversary's damage: success figures may be too optimistic.
struct ErrorReport {
  Real avg_success_worst = 1.0;
  Real max_error_worst = 0.0;
  StateSequence worst_state_seq;
  /// Sequence attaining max_error_worst.
  StateSequence max_error_state_seq;
  SearchMethod method = SearchMethod::kExhaustive;
  std::size_t sequences_evaluated = 0;
};

inline constexpr std::size_t kExhaustiveSearchLimit = 4096;

struct EvaluationOptions {
  /// Exhaustive search when |S|^l is at most this (in kAuto mode).
  std::size_t budget = kExhaustiveSearchLimit;
  SearchMode mode = SearchMode::kAuto;
  std::size_t max_greedy_passes = 64;
};

/// Per-message success probabilities tr{D_i N_{s^l}(rho_i)} under one sequence.
RealVector message_successes(const Avqc& avqc, const DeterministicCode& code, std::span<const std::size_t> seq);
/// Weight-averaged over the support.
RealVector message_successes(const Avqc& avqc, const RandomCode& code, std::span<const std::size_t> seq);
/// Averaged over p^prefix(x, y).
RealVector message_successes(const Avqc& avqc, const CorrelatedCode& code, std::span<const std::size_t> seq);
/// sum_{x,y} p(x,y) F_e(pi_F, R_y o N_{s^l} o P_x), as a one-entry vector.
RealVector message_successes(const Avqc& avqc, const CorrelatedEntanglementCode& code,
                             std::span<const std::size_t> seq);

/// Worst-case search over s^l for a success functional of the sequence.
using SuccessFunction = std::function<RealVector(std::span<const std::size_t>)>;
ErrorReport evaluate_sequences(std::size_t states, std::size_t l, const SuccessFunction& success,
                               const EvaluationOptions& opts = {});

ErrorReport evaluate_code(const Avqc& avqc, const DeterministicCode& code, const EvaluationOptions& opts = {});
ErrorReport evaluate_code(const Avqc& avqc, const RandomCode& code, const EvaluationOptions& opts = {});
ErrorReport evaluate_code(const Avqc& avqc, const CorrelatedCode& code, const EvaluationOptions& opts = {});
/// Reports worst entanglement fidelity as avg_success_worst.
ErrorReport evaluate_code(const Avqc& avqc, const CorrelatedEntanglementCode& code,
                          const EvaluationOptions& opts = {});

struct SymmetrizeOptions {
  bool sampled = false;
  std::size_t samples = 256;
  std::uint64_t seed = 0;
  std::size_t budget = kDefaultEnumerationBudget;
};

/// Code with the message labels scrambled by tau: encoder i -> rho_{tau(i)},
/// decoder element i -> D_{tau(i)}.
DeterministicCode permute_messages(const DeterministicCode& code, std::span<const std::size_t> tau);

/// Averages the code over message permutations: all M! of them with weight
/// w/M!, or `samples` uniform draws in sampled mode.
RandomCode permutation_symmetrize(const RandomCode& code, const SymmetrizeOptions& opts = {});

/// 1 - 2^{-K (eps - 2 eps_l) + l (R + eps + log2 |S|)}.
Real reduction_success_bound(std::size_t k, Real eps, Real eps_l, std::size_t l, Real rate, std::size_t states);

/// Success table success[c][s][i] of every support code, message and
/// sequence, reusable across many sampling trials.
class ReductionTable {
 public:
  ReductionTable(const RandomCode& code, const Avqc& avqc, std::size_t budget = kExhaustiveSearchLimit);

  /// 1 - min_{s, i} sum_c w_c success[c][s][i].
  Real eps_l() const { return eps_l_; }
  std::size_t sequences() const { return sequences_; }

  struct Trial {
    std::vector<std::size_t> indices;
    bool verified = false;
    Real worst_empirical_success = 0.0;
  };
  /// K i.i.d. support indices; verified iff the empirical average success is
  /// at least 1 - eps for every message and sequence.
  Trial trial(std::size_t k, Real eps, std::uint64_t seed) const;

 private:
  ProbabilityVector weights_;
  std::size_t messages_;
  std::size_t sequences_;
  // success_[c] is a sequences x messages matrix.
  std::vector<RealMatrix> success_;
  Real eps_l_;
};

struct ReductionResult {
  std::vector<DeterministicCode> codes;
  std::vector<std::size_t> indices;
  bool verified = false;
  Real eps_l = 0.0;
  Real worst_empirical_success = 0.0;
};

/// Samples K codes from the random code and checks the empirical average.
/// Requires eps > 2 eps_l.
ReductionResult random_code_reduction(const RandomCode& code, const Avqc& avqc, std::size_t l, std::size_t k,
                                      Real eps, std::uint64_t seed, std::size_t budget = kExhaustiveSearchLimit);

/// (m, l - m) with m = floor((2/c) log2 l).
std::pair<std::size_t, std::size_t> two_phase_split(Real c, std::size_t l);

/// Payload of L codes on c uses (support weights must be uniform) followed by
/// a correlated code transmitting the payload index on m uses; target_l = c + m.
/// The payload occupies the first c tensor factors. Decoder mass of cr
/// messages >= L is routed to payload message 0.
CorrelatedCode compose_two_phase(const CorrelatedCode& cr_code, const RandomCode& payload, std::size_t target_l);

/// Same for entanglement payload blocks, all on c uses with reference space F.
CorrelatedEntanglementCode compose_two_phase_entanglement(const CorrelatedCode& cr_code,
                                                          std::span<const EntanglementBlock> payload,
                                                          std::size_t target_l);

}  // namespace avqc
