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
#include <vector>

#include "avqclab/avqc.hpp"

namespace avqc {

struct MinimaxResult {
  Real value = 0.0;
  ProbabilityVector argmax_p;
  ProbabilityVector argmin_q;
  Real grid_step = 0.0;
  /// grid_step times the empirical Lipschitz constant; an estimate, not a proof.
  Real certified_gap = 0.0;
  Real lipschitz_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct CapacityOptions {
  Real grid_step = 1.0 / 64.0;
  std::size_t refine_iterations = 20;
  std::size_t lipschitz_samples = 1000;
  std::uint64_t seed = 0;
  /// Cap on chi evaluations across grids and refinement.
  std::size_t evaluation_budget = 4'000'000;
};

/// chi(p, W_q) with W_q = sum_s q(s) W_s.
Real chi_of_mixture(const AvCqc& avcqc, const ProbabilityVector& p, const ProbabilityVector& q);

/// max_p min_q chi(p, W_q) on simplex grids of the given step, each optimum
/// polished by pairwise mass-transfer moves with halving step.
MinimaxResult cq_random_capacity(const AvCqc& avcqc, const CapacityOptions& opts = {});

/// Points of the probability simplex in `dim` coordinates with entries in
/// multiples of 1/denominator, in lexicographic order of the numerators.
std::vector<ProbabilityVector> simplex_grid(std::size_t dim, std::size_t denominator,
                                            std::size_t budget = kDefaultEnumerationBudget * 16);
/// Number of such points, saturated at cap + 1.
std::size_t simplex_grid_size(std::size_t dim, std::size_t denominator, std::size_t cap);

}  // namespace avqc
