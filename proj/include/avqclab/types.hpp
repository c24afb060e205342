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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace avqc {

using Real = double;
using Complex = std::complex<Real>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ComplexMatrix = Matrix<Complex>;
using ComplexVector = Vector<Complex>;
using RealMatrix = Matrix<Real>;
using RealVector = Vector<Real>;

/// Probability vector over a finite index set.
using ProbabilityVector = RealVector;

/// Numerical tolerances shared by every validating constructor.
struct Tolerances {
  Real herm = 1e-9;
  Real trace = 1e-9;
  Real norm = 1e-9;
  Real prob = 1e-9;
  Real psd = 1e-8;
  Real cptp = 1e-9;
  Real povm = 1e-9;
  Real feas = 1e-7;
};

inline constexpr Tolerances kTol{};

/// Largest total Hilbert-space dimension any object may have.
inline constexpr std::size_t kMaxDimension = 4096;

/// Default cap on enumerated index sets (S^l, function alphabets, ...).
inline constexpr std::size_t kDefaultEnumerationBudget = 65536;

/// Raised when an input object fails an invariant check.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public ValidationError {
 public:
  explicit DimensionError(const std::string& what) : ValidationError(what) {}
};

/// Raised when an enumeration would exceed the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// base^exp saturated at cap+1, so callers only compare against cap.
inline std::size_t bounded_power(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

}  // namespace avqc
