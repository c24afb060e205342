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

// Seeded random objects and brute-force oracles shared by the test binaries.

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "avqclab/avqc.hpp"
#include "avqclab/codes.hpp"
#include "avqclab/linalg.hpp"
#include "avqclab/quantum.hpp"
#include "avqclab/random.hpp"

namespace avqc::testing {

inline ComplexMatrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
  }
  return m;
}

/// Haar-ish unitary: Q factor of a Gaussian matrix with phases fixed by R.
inline ComplexMatrix random_unitary(Rng& rng, Eigen::Index dim) {
  const ComplexMatrix g = gaussian_matrix(rng, dim, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline PureState random_pure(Rng& rng, Eigen::Index dim) {
  ComplexVector v = gaussian_matrix(rng, dim, 1).col(0);
  return PureState(v / v.norm());
}

/// Full-rank mixed state from a Ginibre matrix.
inline DensityMatrix random_state(Rng& rng, Eigen::Index dim, Eigen::Index rank = 0) {
  const ComplexMatrix g = gaussian_matrix(rng, dim, rank == 0 ? dim : rank);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(hermitian_part(rho));
}

/// Random channel with `kraus` operators from a random isometry.
inline QuantumChannel random_channel(Rng& rng, Eigen::Index dim_in, Eigen::Index dim_out, Eigen::Index kraus) {
  const ComplexMatrix g = gaussian_matrix(rng, dim_out * kraus, dim_in);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  const ComplexMatrix v = qr.householderQ() * ComplexMatrix::Identity(dim_out * kraus, dim_in);
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index k = 0; k < kraus; ++k) ops.push_back(v.block(k * dim_out, 0, dim_out, dim_in));
  return QuantumChannel(dim_in, dim_out, std::move(ops));
}

inline ProbabilityVector random_distribution(Rng& rng, Eigen::Index dim) {
  ProbabilityVector p(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    Real u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    p(i) = -std::log(u);
  }
  return p / p.sum();
}

/// Brute-force symmetrizability oracle for two inputs: scans (p_1, p_2) over
/// the simplex grid of step 1/denominator and returns the smallest max-norm
/// mismatch of sum_s p_2(s) out1[s] = sum_s p_1(s) out2[s].
inline Real grid_symmetrization_gap(const std::vector<ComplexMatrix>& out1, const std::vector<ComplexMatrix>& out2,
                                    std::size_t denominator) {
  const std::size_t s_count = out1.size();
  std::vector<std::vector<Real>> grid;
  std::vector<std::size_t> counts(s_count, 0);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == s_count) {
      counts[pos] = left;
      std::vector<Real> p(s_count);
      for (std::size_t i = 0; i < s_count; ++i) p[i] = Real(counts[i]) / Real(denominator);
      grid.push_back(p);
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      counts[pos] = k;
      self(self, pos + 1, left - k);
    }
  };
  rec(rec, 0, denominator);
  std::vector<ComplexMatrix> lhs, rhs;
  for (const auto& p : grid) {
    ComplexMatrix a = ComplexMatrix::Zero(out1[0].rows(), out1[0].cols());
    ComplexMatrix b = a;
    for (std::size_t s = 0; s < s_count; ++s) {
      a += p[s] * out1[s];
      b += p[s] * out2[s];
    }
    lhs.push_back(a);
    rhs.push_back(b);
  }
  Real best = std::numeric_limits<Real>::infinity();
  for (std::size_t i2 = 0; i2 < grid.size(); ++i2) {
    for (std::size_t i1 = 0; i1 < grid.size(); ++i1) best = std::min(best, max_abs_diff(lhs[i2], rhs[i1]));
  }
  return best;
}

inline Real grid_symmetrization_gap(const Avqc& avqc, const ComplexMatrix& rho1, const ComplexMatrix& rho2,
                                    std::size_t denominator) {
  std::vector<ComplexMatrix> out1, out2;
  for (const auto& ch : avqc.channels()) {
    out1.push_back(ch.apply(rho1));
    out2.push_back(ch.apply(rho2));
  }
  return grid_symmetrization_gap(out1, out2, denominator);
}

/// Measure in the basis `u`, then prepare preps[(z + s) mod n] for state s.
/// With as many preparations as input dimensions this is symmetrizable on
/// every probe set via p_rho(s) = <u_s|rho|u_s>.
inline Avqc measure_prepare_family(const ComplexMatrix& u, const std::vector<DensityMatrix>& preps) {
  const Eigen::Index d = u.rows();
  const std::size_t n = preps.size();
  if (n != static_cast<std::size_t>(d)) throw DimensionError("measure_prepare_family: need one preparation per input");
  std::vector<std::string> labels;
  std::vector<QuantumChannel> chans;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<ComplexMatrix> kraus;
    for (Eigen::Index z = 0; z < d; ++z) {
      const DensityMatrix& target = preps[(static_cast<std::size_t>(z) + s) % n];
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(target.matrix());
      for (Eigen::Index k = 0; k < target.dim(); ++k) {
        const Real lam = es.eigenvalues()(k);
        if (lam <= 1e-14) continue;
        kraus.push_back(std::sqrt(lam) * es.eigenvectors().col(k) * u.col(z).adjoint());
      }
    }
    labels.push_back("m" + std::to_string(s));
    chans.emplace_back(d, preps.front().dim(), std::move(kraus));
  }
  return Avqc(std::move(labels), std::move(chans));
}

// Normalized random POVM: D_i = S^{-1/2} G_i S^{-1/2}, S = sum G_i.
inline Povm random_povm(Rng& rng, Eigen::Index dim, std::size_t count) {
  std::vector<ComplexMatrix> g;
  ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < count; ++i) {
    const ComplexMatrix a = gaussian_matrix(rng, dim, dim);
    g.push_back(a * a.adjoint());
    total += g.back();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(total);
  const ComplexMatrix inv_root = es.operatorInverseSqrt();
  std::vector<ComplexMatrix> out;
  for (const auto& gi : g) out.push_back(hermitian_part(ComplexMatrix(inv_root * gi * inv_root)));
  return Povm(std::move(out));
}

inline DeterministicCode random_code(Rng& rng, std::size_t l, std::size_t m) {
  const auto dim = static_cast<Eigen::Index>(std::pow(2, l));
  std::vector<DensityMatrix> enc;
  for (std::size_t i = 0; i < m; ++i) enc.push_back(random_state(rng, dim, 1 + i % 2));
  return DeterministicCode(l, std::move(enc), random_povm(rng, dim, m));
}

// Some split S x T, S^c x T^c carries all mass with both halves non-empty.
inline bool has_nontrivial_partition(const RealMatrix& joint) {
  const auto nx = static_cast<std::size_t>(joint.rows());
  const auto ny = static_cast<std::size_t>(joint.cols());
  for (std::size_t s = 0; s < (std::size_t{1} << nx); ++s) {
    for (std::size_t t = 0; t < (std::size_t{1} << ny); ++t) {
      Real inside = 0.0, outside = 0.0, cross = 0.0;
      for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t y = 0; y < ny; ++y) {
          const bool sx = (s >> x) & 1u;
          const bool ty = (t >> y) & 1u;
          const Real v = joint(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
          if (sx && ty) inside += v;
          else if (!sx && !ty) outside += v;
          else cross += v;
        }
      }
      if (cross == 0.0 && inside > 0.0 && outside > 0.0) return true;
    }
  }
  return false;
}

struct BinarizationCase {
  RealVector a, b, c;
  Real sigma = 0.0;
  Real eps = 0.0;
};

// Flat-ish a, b mixed by eps/2 so that sum min(a, b) >= 1 - eps/2 and every
// entry stays below 3/4 eps.
inline BinarizationCase random_binarization_case(Rng& rng) {
  BinarizationCase t;
  t.eps = 0.02 + 0.28 * rng.uniform();
  const auto n = static_cast<Eigen::Index>(std::ceil(2.0 / t.eps)) + static_cast<Eigen::Index>(rng.below(10));
  auto flat = [&] {
    RealVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + 0.5 * rng.uniform();
    return RealVector(v / v.sum());
  };
  t.a = flat();
  t.b = (1.0 - t.eps / 2) * t.a + (t.eps / 2) * flat();
  t.b /= t.b.sum();
  t.c = t.a.cwiseMin(t.b);
  t.sigma = 0.01 + 0.48 * rng.uniform();
  return t;
}

}  // namespace avqc::testing
