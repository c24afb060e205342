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

#include "avqclab/types.hpp"

namespace avqc {

struct LpOptions {
  /// Pivot elements below this magnitude are treated as zero.
  Real pivot_tol = 1e-11;
  /// Phase-1 objective at or below this counts as feasible.
  Real objective_tol = 1e-9;
  /// Relative singular-value threshold for the row-space reduction.
  Real rank_tol = 1e-10;
  std::size_t max_iterations = 200000;
};

struct LpResult {
  bool feasible = false;
  /// Basic solution x >= 0 (meaningful when feasible).
  RealVector x;
  /// Max-norm of A x - b at x when feasible, otherwise the phase-1 objective
  /// or the out-of-range component of b, whichever detected infeasibility.
  Real residual = 0.0;
  std::size_t iterations = 0;
};

/// Row-space basis of a tall homogeneous system, accumulated block by block
/// (one QR per block) so the full matrix is never stored.
class RowSpaceAccumulator {
 public:
  explicit RowSpaceAccumulator(Eigen::Index cols);

  void add_rows(const RealMatrix& rows);
  /// Rows spanning the same space as everything added so far, with
  /// numerically dependent directions dropped.
  RealMatrix reduced(Real rank_tol = LpOptions{}.rank_tol) const;
  Eigen::Index cols() const { return cols_; }

 private:
  Eigen::Index cols_;
  RealMatrix r_;
};

/// Decides whether {x >= 0 : A x = b} is non-empty with a dense two-stage
/// method: rank-revealing QR of A to drop redundant rows, then a phase-1
/// simplex with Bland's rule on the reduced system.
LpResult solve_feasibility(const RealMatrix& a, const RealVector& b, const LpOptions& opts = {});

}  // namespace avqc
