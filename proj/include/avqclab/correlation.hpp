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

#include <optional>
#include <vector>

#include "avqclab/source.hpp"

namespace avqc {

inline constexpr Real kMutualInformationFloor = 1e-9;
inline constexpr Real kPositivityFloor = 1e-12;

/// Binary maps f: X -> {0,1}, g: Y -> {0,1} and I(f(X); g(Y)).
struct BinaryReduction {
  std::vector<int> f;
  std::vector<int> g;
  Real mutual_information = 0.0;
};

/// Maximizes I(f(X); g(Y)) over all binary maps. Among maximizers (within
/// 1e-12) the lexicographically smallest pair of value tables wins, f before g,
/// f(0) most significant. Throws ValidationError when I(X;Y) <= tol_mi.
BinaryReduction binary_reduction(const BipartiteSource& src, Real tol_mi = kMutualInformationFloor);

/// Blocks X_1..X_k and Y_1..Y_k with p(union X_i x Y_i) = 1.
struct PartitionPair {
  std::vector<std::vector<std::size_t>> x_blocks;
  std::vector<std::vector<std::size_t>> y_blocks;
};

struct ExtractabilityVerdict {
  bool extractable = false;
  /// Connected components of the support graph after dropping null letters.
  std::size_t components = 0;
  /// Component-induced partition when extractable. Letters of zero marginal
  /// mass are placed in the first block.
  std::optional<PartitionPair> decomposition;
};

ExtractabilityVerdict cr_extractable(const BipartiteSource& src);

/// p(x, y) > tol for every cell.
bool in_relative_interior(const BipartiteSource& src, Real tol = kPositivityFloor);

struct BinarizationResult {
  /// Number of leading symbols mapped to 0 (1-based count).
  std::size_t m_hat = 0;
  Real mass_a = 0.0;
  Real mass_b = 0.0;
  /// Lower bound on P(Theta(f) = Theta(g)).
  Real agreement_lb = 0.0;
};

/// Threshold map Theta(k) = [k > m_hat] for the smallest m_hat with
/// min(A_m, B_m) >= sigma, A_m, B_m the cumulative sums of a and b.
BinarizationResult witsenhausen_binarize(const RealVector& a, const RealVector& b, const RealVector& c, Real sigma,
                                         Real eps, const Tolerances& tol = kTol);

/// Block functions f_l: X^l -> Gamma, g_l: Y^l -> Gamma, tables indexed by
/// the lexicographic rank of x^l and y^l.
struct CrFunctionsPair {
  std::size_t l = 1;
  std::size_t gamma_size = 1;
  std::vector<std::size_t> f_table;
  std::vector<std::size_t> g_table;
};

struct PairStatistics {
  RealVector a;
  RealVector b;
  RealVector c;
  Real agreement = 0.0;
};

inline constexpr std::size_t kMarginalEnumerationBudget = std::size_t{1} << 20;
inline constexpr std::size_t kJointEnumerationBudget = std::size_t{1} << 24;

/// a(k) = p_X^l(f = k), b(k) = p_Y^l(g = k), c(k) = p^l(f = g = k) by exact enumeration.
PairStatistics cr_pair_statistics(const BipartiteSource& src, const CrFunctionsPair& pair);

struct CodeDistributionDiagnostics {
  Real max_joint = 0.0;
  Real max_sender_marginal = 0.0;
  Real max_receiver_marginal = 0.0;
  Real diag_mass = 0.0;
};

CodeDistributionDiagnostics code_distribution_diagnostics(const RealMatrix& gamma, const Tolerances& tol = kTol);

}  // namespace avqc
