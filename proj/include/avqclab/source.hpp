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

#include <span>
#include <string>
#include <vector>

#include "avqclab/types.hpp"

namespace avqc {

/// Joint distribution p(x, y) of a bipartite i.i.d. source on X x Y.
class BipartiteSource {
 public:
  BipartiteSource(std::vector<std::string> x_alphabet, std::vector<std::string> y_alphabet, RealMatrix joint,
                  const Tolerances& tol = kTol);
  /// Labels "0", "1", ... on both sides.
  explicit BipartiteSource(RealMatrix joint, const Tolerances& tol = kTol);

  const std::vector<std::string>& x_alphabet() const { return x_alphabet_; }
  const std::vector<std::string>& y_alphabet() const { return y_alphabet_; }
  const RealMatrix& joint() const { return joint_; }
  std::size_t x_size() const { return x_alphabet_.size(); }
  std::size_t y_size() const { return y_alphabet_.size(); }

  RealVector x_marginal() const { return joint_.rowwise().sum(); }
  RealVector y_marginal() const { return joint_.colwise().sum().transpose(); }

  /// p^{(x)n}(x^n, y^n).
  Real block_probability(std::span<const std::size_t> xs, std::span<const std::size_t> ys) const;

 private:
  std::vector<std::string> x_alphabet_;
  std::vector<std::string> y_alphabet_;
  RealMatrix joint_;
};

/// Digits of `index` in base `base`, most significant first, padded to `length`.
std::vector<std::size_t> index_to_digits(std::size_t index, std::size_t base, std::size_t length);
std::size_t digits_to_index(std::span<const std::size_t> digits, std::size_t base);

/// Fills `digits` with the lexicographic successor; returns false after the last tuple.
bool next_tuple(std::vector<std::size_t>& digits, std::size_t base);

}  // namespace avqc
