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

#include "avqclab/correlation.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "avqclab/info.hpp"

namespace avqc {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<int> binary_table(std::size_t code, std::size_t size) {
  std::vector<int> out(size);
  for (std::size_t x = 0; x < size; ++x) out[x] = static_cast<int>((code >> (size - 1 - x)) & 1U);
  return out;
}

}  // namespace

BinaryReduction binary_reduction(const BipartiteSource& src, Real tol_mi) {
  if (mutual_information(src) <= tol_mi) {
    throw ValidationError("binary_reduction: source has no mutual information, so no informative binary pair exists");
  }
  const std::size_t nx = src.x_size();
  const std::size_t ny = src.y_size();
  if (nx + ny > 24) throw BudgetExceeded("binary_reduction: 2^|X| * 2^|Y| exceeds 2^24");
  const RealMatrix& p = src.joint();

  BinaryReduction best;
  best.mutual_information = -1.0;
  std::size_t best_u = 0;
  std::size_t best_v = 0;
  for (std::size_t u = 0; u < (std::size_t{1} << nx); ++u) {
    // Row sums of p over the two halves of the f-partition.
    RealMatrix rows = RealMatrix::Zero(2, static_cast<Eigen::Index>(ny));
    for (std::size_t x = 0; x < nx; ++x) rows.row((u >> (nx - 1 - x)) & 1U) += p.row(x);
    for (std::size_t v = 0; v < (std::size_t{1} << ny); ++v) {
      RealMatrix q = RealMatrix::Zero(2, 2);
      for (std::size_t y = 0; y < ny; ++y) q.col((v >> (ny - 1 - y)) & 1U) += rows.col(y);
      const Real mi = mutual_information(q);
      if (mi > best.mutual_information + 1e-12) {
        best.mutual_information = mi;
        best_u = u;
        best_v = v;
      }
    }
  }
  best.f = binary_table(best_u, nx);
  best.g = binary_table(best_v, ny);
  return best;
}

bool in_relative_interior(const BipartiteSource& src, Real tol) { return src.joint().minCoeff() > tol; }

ExtractabilityVerdict cr_extractable(const BipartiteSource& src) {
  const RealMatrix& p = src.joint();
  const std::size_t nx = src.x_size();
  const std::size_t ny = src.y_size();
  const RealVector px = src.x_marginal();
  const RealVector py = src.y_marginal();

  // Nodes 0..nx-1 are X letters, nx..nx+ny-1 are Y letters.
  DisjointSets sets(nx + ny);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      if (p(x, y) > 0.0) sets.unite(x, nx + y);
    }
  }

  std::map<std::size_t, std::size_t> block_of_root;  // ordered by smallest member
  for (std::size_t v = 0; v < nx + ny; ++v) {
    const bool active = v < nx ? px(v) > 0.0 : py(v - nx) > 0.0;
    if (active) block_of_root.emplace(sets.find(v), block_of_root.size());
  }

  ExtractabilityVerdict verdict;
  verdict.components = block_of_root.size();
  verdict.extractable = verdict.components >= 2;
  if (!verdict.extractable) return verdict;

  PartitionPair parts;
  parts.x_blocks.resize(verdict.components);
  parts.y_blocks.resize(verdict.components);
  for (std::size_t x = 0; x < nx; ++x) {
    parts.x_blocks[px(x) > 0.0 ? block_of_root.at(sets.find(x)) : 0].push_back(x);
  }
  for (std::size_t y = 0; y < ny; ++y) {
    parts.y_blocks[py(y) > 0.0 ? block_of_root.at(sets.find(nx + y)) : 0].push_back(y);
  }
  verdict.decomposition = std::move(parts);
  return verdict;
}

BinarizationResult witsenhausen_binarize(const RealVector& a, const RealVector& b, const RealVector& c, Real sigma,
                                         Real eps, const Tolerances& tol) {
  const Eigen::Index n = a.size();
  if (n == 0 || b.size() != n || c.size() != n) throw DimensionError("witsenhausen_binarize: mass vectors differ in length");
  if (!(sigma > 0.0 && sigma < 0.5)) throw ValidationError("witsenhausen_binarize: sigma must lie in (0, 1/2)");
  if (!(eps >= 0.0)) throw ValidationError("witsenhausen_binarize: eps must be nonnegative");
  for (Eigen::Index k = 0; k < n; ++k) {
    if (a(k) < -tol.prob || b(k) < -tol.prob || c(k) < -tol.prob) {
      throw ValidationError("witsenhausen_binarize: negative mass at symbol " + std::to_string(k));
    }
    if (a(k) > eps + tol.prob || b(k) > eps + tol.prob) {
      throw ValidationError("witsenhausen_binarize: symbol " + std::to_string(k) + " carries more than eps mass");
    }
    if (c(k) > std::min(a(k), b(k)) + tol.prob) {
      throw ValidationError("witsenhausen_binarize: agreement mass exceeds a marginal at symbol " +
                            std::to_string(k));
    }
  }
  if (std::abs(a.sum() - 1.0) > tol.prob || std::abs(b.sum() - 1.0) > tol.prob) {
    throw ValidationError("witsenhausen_binarize: a and b must be probability vectors");
  }
  if (c.sum() < 1.0 - eps - tol.prob) throw ValidationError("witsenhausen_binarize: total agreement below 1 - eps");

  BinarizationResult out;
  Real cum_a = 0.0;
  Real cum_b = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cum_a += a(k);
    cum_b += b(k);
    if (std::min(cum_a, cum_b) >= sigma - 1e-12) {
      out.m_hat = static_cast<std::size_t>(k + 1);
      break;
    }
  }
  out.mass_a = cum_a;
  out.mass_b = cum_b;
  out.agreement_lb = 1.0 - eps;
  const Real hi = sigma + 2.0 * eps + 1e-12;
  if (out.m_hat == 0 || cum_a < sigma - 1e-12 || cum_b < sigma - 1e-12 || cum_a > hi || cum_b > hi) {
    throw std::logic_error("witsenhausen_binarize: threshold masses escaped [sigma, sigma + 2 eps]");
  }
  return out;
}

PairStatistics cr_pair_statistics(const BipartiteSource& src, const CrFunctionsPair& pair) {
  const std::size_t nx = src.x_size();
  const std::size_t ny = src.y_size();
  const std::size_t l = pair.l;
  if (l == 0) throw ValidationError("cr_pair_statistics: block length must be positive");
  const std::size_t xs = bounded_power(nx, l, kMarginalEnumerationBudget);
  const std::size_t ys = bounded_power(ny, l, kMarginalEnumerationBudget);
  if (xs > kMarginalEnumerationBudget || ys > kMarginalEnumerationBudget ||
      bounded_power(nx * ny, l, kJointEnumerationBudget) > kJointEnumerationBudget) {
    throw BudgetExceeded("cr_pair_statistics: block alphabets exceed the enumeration budget");
  }
  if (pair.f_table.size() != xs || pair.g_table.size() != ys) {
    throw DimensionError("cr_pair_statistics: function tables must cover X^l and Y^l");
  }
  for (std::size_t v : pair.f_table) {
    if (v >= pair.gamma_size) throw ValidationError("cr_pair_statistics: f value outside Gamma");
  }
  for (std::size_t v : pair.g_table) {
    if (v >= pair.gamma_size) throw ValidationError("cr_pair_statistics: g value outside Gamma");
  }

  const Eigen::Index g = static_cast<Eigen::Index>(pair.gamma_size);
  PairStatistics out{RealVector::Zero(g), RealVector::Zero(g), RealVector::Zero(g), 0.0};
  const RealVector px = src.x_marginal();
  const RealVector py = src.y_marginal();

  std::vector<std::size_t> xd(l, 0);
  for (std::size_t xi = 0; xi < xs; ++xi, next_tuple(xd, nx)) {
    Real mass = 1.0;
    for (std::size_t d : xd) mass *= px(d);
    out.a(pair.f_table[xi]) += mass;
  }
  std::vector<std::size_t> yd(l, 0);
  for (std::size_t yi = 0; yi < ys; ++yi, next_tuple(yd, ny)) {
    Real mass = 1.0;
    for (std::size_t d : yd) mass *= py(d);
    out.b(pair.g_table[yi]) += mass;
  }
  xd.assign(l, 0);
  for (std::size_t xi = 0; xi < xs; ++xi, next_tuple(xd, nx)) {
    const std::size_t k = pair.f_table[xi];
    yd.assign(l, 0);
    for (std::size_t yi = 0; yi < ys; ++yi, next_tuple(yd, ny)) {
      if (pair.g_table[yi] != k) continue;
      out.c(k) += src.block_probability(xd, yd);
    }
  }
  out.agreement = out.c.sum();
  return out;
}

CodeDistributionDiagnostics code_distribution_diagnostics(const RealMatrix& gamma, const Tolerances& tol) {
  if (gamma.rows() == 0 || gamma.rows() != gamma.cols()) {
    throw DimensionError("code_distribution_diagnostics: table must be square and non-empty");
  }
  if (gamma.minCoeff() < 0.0 || !gamma.allFinite() || std::abs(gamma.sum() - 1.0) > tol.prob) {
    throw ValidationError("code_distribution_diagnostics: table is not a probability distribution");
  }
  return {gamma.maxCoeff(), gamma.rowwise().sum().maxCoeff(), gamma.colwise().sum().maxCoeff(), gamma.trace()};
}

}  // namespace avqc
