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

#include "avqclab/source.hpp"

#include <cmath>

namespace avqc {

namespace {

std::vector<std::string> default_labels(Eigen::Index n) {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace

BipartiteSource::BipartiteSource(std::vector<std::string> x_alphabet, std::vector<std::string> y_alphabet,
                                 RealMatrix joint, const Tolerances& tol)
    : x_alphabet_(std::move(x_alphabet)), y_alphabet_(std::move(y_alphabet)), joint_(std::move(joint)) {
  if (x_alphabet_.empty() || y_alphabet_.empty()) throw ValidationError("source: empty alphabet");
  if (joint_.rows() != static_cast<Eigen::Index>(x_alphabet_.size()) ||
      joint_.cols() != static_cast<Eigen::Index>(y_alphabet_.size())) {
    throw DimensionError("source: joint table shape does not match the alphabets");
  }
  for (Eigen::Index i = 0; i < joint_.rows(); ++i) {
    for (Eigen::Index j = 0; j < joint_.cols(); ++j) {
      if (!std::isfinite(joint_(i, j)) || joint_(i, j) < 0.0) {
        throw ValidationError("source: entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") is negative or not finite");
      }
    }
  }
  if (std::abs(joint_.sum() - 1.0) > tol.prob) {
    throw ValidationError("source: joint table sums to " + std::to_string(joint_.sum()));
  }
}

BipartiteSource::BipartiteSource(RealMatrix joint, const Tolerances& tol)
    : BipartiteSource(default_labels(joint.rows()), default_labels(joint.cols()), joint, tol) {}

Real BipartiteSource::block_probability(std::span<const std::size_t> xs, std::span<const std::size_t> ys) const {
  if (xs.size() != ys.size()) throw DimensionError("source: block lengths differ");
  Real p = 1.0;
  for (std::size_t k = 0; k < xs.size(); ++k) p *= joint_(xs[k], ys[k]);
  return p;
}

std::vector<std::size_t> index_to_digits(std::size_t index, std::size_t base, std::size_t length) {
  std::vector<std::size_t> digits(length, 0);
  for (std::size_t k = length; k-- > 0;) {
    digits[k] = index % base;
    index /= base;
  }
  return digits;
}

std::size_t digits_to_index(std::span<const std::size_t> digits, std::size_t base) {
  std::size_t index = 0;
  for (std::size_t d : digits) index = index * base + d;
  return index;
}

bool next_tuple(std::vector<std::size_t>& digits, std::size_t base) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < base) return true;
    digits[k] = 0;
  }
  return false;
}

}  // namespace avqc
