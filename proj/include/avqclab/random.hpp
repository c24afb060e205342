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

#include <cmath>
#include <cstdint>
#include <random>

#include "avqclab/parallel.hpp"
#include "avqclab/types.hpp"

namespace avqc {

/// Seeded mt19937_64. `split(k)` yields an independent stream keyed by k, so
/// per-trial streams do not depend on evaluation order or thread count.
/// Distributions are computed here rather than through <random> adaptors,
/// whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  Rng split(std::uint64_t key) const { return Rng(derive_seed(seed_, key)); }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  Real uniform() { return static_cast<Real>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller.
  Real normal() {
    Real u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const Real u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  /// Index drawn from the cumulative weights of w.
  std::size_t categorical(const RealVector& w) {
    const Real u = uniform() * w.sum();
    Real acc = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      acc += w(i);
      if (u < acc) return static_cast<std::size_t>(i);
    }
    return static_cast<std::size_t>(w.size() - 1);
  }

  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * Real(n)) % n; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace avqc
