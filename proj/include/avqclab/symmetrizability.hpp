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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "avqclab/avqc.hpp"
#include "avqclab/lp.hpp"

namespace avqc {

/// Distributions p_1, ..., p_K over a common label set (for AVQCs, S^l).
struct SymmetrizingFamily {
  std::vector<std::string> labels;
  std::vector<ProbabilityVector> distributions;

  std::size_t index_count() const { return distributions.size(); }
  void validate(const Tolerances& tol = kTol) const;
};

struct SymmetrizabilityVerdict {
  bool feasible = false;
  std::optional<SymmetrizingFamily> witness;
  /// Max-norm violation of the pairwise equalities at the witness, or the
  /// solver's infeasibility evidence when no witness exists.
  Real residual = 0.0;
  /// Probe pairs (i, j), i < j, that coincide entrywise.
  std::vector<std::pair<std::size_t, std::size_t>> duplicate_probes;
};

struct SymmetrizabilityOptions {
  Tolerances tol = kTol;
  std::size_t budget = kDefaultEnumerationBudget;
  LpOptions lp = {};
};

/// Outputs O[s][i] of a family of linear maps indexed by s on probes i. The
/// program asks for p_i in P(S) with sum_s p_j(s) O[s][i] = sum_s p_i(s) O[s][j]
/// for all i < j. Every check in this header reduces to it.
using OutputTable = std::vector<std::vector<ComplexMatrix>>;

SymmetrizabilityVerdict solve_pairwise_symmetrization(const OutputTable& outputs,
                                                      std::vector<std::string> labels,
                                                      const SymmetrizabilityOptions& opts = {});

/// Max-norm of sum_s p_j(s) O[s][i] - sum_s p_i(s) O[s][j] over all pairs.
Real pairwise_residual(const OutputTable& outputs, const SymmetrizingFamily& family);

/// O[s^l][i] = N_{s^l}(A_i) for every s^l in lexicographic order.
OutputTable sequence_outputs(const Avqc& avqc, std::size_t l, std::span<const ComplexMatrix> probes,
                             std::size_t budget = kDefaultEnumerationBudget);

/// l-symmetrizability relative to density-matrix probes on H^{(x)l}.
SymmetrizabilityVerdict check_symmetrizable(const Avqc& avqc, std::size_t l, std::span<const DensityMatrix> probes,
                                            const SymmetrizabilityOptions& opts = {});
/// Same program with arbitrary operator probes (need not be states).
SymmetrizabilityVerdict check_symmetrizable_operators(const Avqc& avqc, std::size_t l,
                                                      std::span<const ComplexMatrix> probes,
                                                      const SymmetrizabilityOptions& opts = {});
SymmetrizabilityVerdict check_symmetrizable_pure(const Avqc& avqc, std::size_t l,
                                                 std::span<const PureState> probes,
                                                 const SymmetrizabilityOptions& opts = {});

/// Hermitian, unit-trace operators A_0..A_{D^2-1} on C^D whose convex hull
/// contains every state. Built as a regular simplex in generalized Gell-Mann
/// coordinates centred at I/D, with inradius equal to the radius sqrt(1-1/D)
/// of the state space in those coordinates.
std::vector<ComplexMatrix> geometric_frame(Eigen::Index dim);

/// Barycentric coordinates of a unit-trace Hermitian operator w.r.t. the frame.
/// The operator lies in the hull iff all coordinates are >= 0.
RealVector frame_coordinates(std::span<const ComplexMatrix> frame, const ComplexMatrix& op);

/// Decision of l-symmetrizability itself, using the geometric frame on
/// (C^d)^{(x)l} as probes.
SymmetrizabilityVerdict check_l_symmetrizable(const Avqc& avqc, std::size_t l,
                                              const SymmetrizabilityOptions& opts = {});

/// Extends a family on base points to new points that are convex combinations
/// of them: p_i = sum_j r(j|i) p_j. `mixing` has one row per point of the
/// extended list (base points first, identity rows there) and one column per
/// base point. Returns the family on all points.
SymmetrizingFamily extend_family(std::span<const ComplexMatrix> base_points, const SymmetrizingFamily& base_family,
                                 std::span<const ComplexMatrix> new_points, const RealMatrix& mixing,
                                 const Tolerances& tol = kTol);

/// Ericson-type condition for a classical AVC; variables sigma(t|i).
SymmetrizabilityVerdict check_symmetrizable_classical(const ClassicalAvc& avc,
                                                      const SymmetrizabilityOptions& opts = {});

/// Condition for a cq AVC; variables tau(s|z).
SymmetrizabilityVerdict check_symmetrizable_cq(const AvCqc& avcqc, const SymmetrizabilityOptions& opts = {});

}  // namespace avqc
