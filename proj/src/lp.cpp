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

#include "avqclab/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/QR>

namespace avqc {

namespace {

using Tableau = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct PhaseOne {
  RealVector x;
  Real objective;
  std::size_t iterations;
  /// Structural columns in the final basis.
  std::vector<Eigen::Index> basic;
};

// min sum(artificials) s.t. A x + a = b, x, a >= 0, with b >= 0.
PhaseOne phase_one(const RealMatrix& a, const RealVector& b, const LpOptions& opts) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  const Eigen::Index rhs = n + m;
  Tableau t = Tableau::Zero(m + 1, n + m + 1);
  std::vector<Eigen::Index> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Real sign = b(i) < 0.0 ? -1.0 : 1.0;
    t.row(i).head(n) = sign * a.row(i);
    t(i, n + i) = 1.0;
    t(i, rhs) = sign * b(i);
    basis[i] = n + i;
  }
  for (Eigen::Index j = 0; j < n; ++j) t(m, j) = -t.col(j).head(m).sum();
  t(m, rhs) = -t.col(rhs).head(m).sum();

  std::size_t iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    // Bland: lowest-index improving column, artificials never re-enter.
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (t(m, j) < -opts.pivot_tol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    // Two-pass ratio test: find the minimum ratio, then among rows within a
    // small tolerance of it take the largest pivot (smallest basis index on ties).
    Real best = std::numeric_limits<Real>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, enter) <= opts.pivot_tol) continue;
      best = std::min(best, std::max<Real>(0.0, t(i, rhs)) / t(i, enter));
    }
    Eigen::Index leave = -1;
    if (best < std::numeric_limits<Real>::infinity()) {
      const Real slack = 1e-12 * std::max<Real>(1.0, best);
      for (Eigen::Index i = 0; i < m; ++i) {
        if (t(i, enter) <= opts.pivot_tol) continue;
        if (std::max<Real>(0.0, t(i, rhs)) / t(i, enter) > best + slack) continue;
        if (leave < 0 || t(i, enter) > t(leave, enter) * (1.0 + 1e-9) ||
            (t(i, enter) >= t(leave, enter) * (1.0 - 1e-9) && basis[i] < basis[leave])) {
          leave = i;
        }
      }
    }
    if (leave < 0) {
      // Unbounded direction cannot occur in phase 1; treat the column as dead.
      t(m, enter) = 0.0;
      continue;
    }

    t.row(leave) /= t(leave, enter);
    for (Eigen::Index k = 0; k <= m; ++k) {
      if (k == leave || t(k, enter) == 0.0) continue;
      t.row(k) -= t(k, enter) * t.row(leave);
    }
    basis[leave] = enter;
  }

  PhaseOne out{RealVector::Zero(n), 0.0, iter, {}};
  for (Eigen::Index i = 0; i < m; ++i) {
    const Real v = std::max<Real>(0.0, t(i, rhs));
    if (basis[i] < n) {
      out.x(basis[i]) = v;
      out.basic.push_back(basis[i]);
    } else {
      out.objective += v;
    }
  }
  return out;
}

}  // namespace

RowSpaceAccumulator::RowSpaceAccumulator(Eigen::Index cols) : cols_(cols), r_(0, cols) {}

void RowSpaceAccumulator::add_rows(const RealMatrix& rows) {
  if (rows.cols() != cols_) throw DimensionError("row accumulator: column count mismatch");
  if (rows.rows() == 0) return;
  RealMatrix stacked(r_.rows() + rows.rows(), cols_);
  stacked << r_, rows;
  if (stacked.rows() <= cols_) {
    r_ = std::move(stacked);
    return;
  }
  Eigen::HouseholderQR<RealMatrix> qr(stacked);
  r_ = qr.matrixQR().topRows(cols_).triangularView<Eigen::Upper>();
}

RealMatrix RowSpaceAccumulator::reduced(Real rank_tol) const {
  if (r_.rows() == 0) return r_;
  Eigen::ColPivHouseholderQR<RealMatrix> qr(r_.rows(), r_.cols());
  qr.setThreshold(rank_tol);
  qr.compute(r_);
  const RealMatrix rotated = qr.householderQ().adjoint() * r_;
  return rotated.topRows(qr.rank());
}

LpResult solve_feasibility(const RealMatrix& a, const RealVector& b, const LpOptions& opts) {
  if (a.rows() != b.size()) throw DimensionError("solve_feasibility: A and b row counts differ");
  LpResult out;
  if (a.rows() == 0) {
    out.feasible = true;
    out.x = RealVector::Zero(a.cols());
    return out;
  }

  Eigen::ColPivHouseholderQR<RealMatrix> qr(a.rows(), a.cols());
  qr.setThreshold(opts.rank_tol);
  qr.compute(a);
  const Eigen::Index rank = qr.rank();
  const RealVector qtb = qr.householderQ().adjoint() * b;
  const Real out_of_range = qtb.tail(a.rows() - rank).norm();
  if (out_of_range > opts.objective_tol * std::max<Real>(1.0, b.norm())) {
    out.residual = out_of_range;
    out.x = RealVector::Zero(a.cols());
    return out;
  }

  // Equilibrate rows so pivot tolerances are scale-free.
  RealMatrix reduced = (qr.householderQ().adjoint() * a).topRows(rank);
  RealVector rhs = qtb.head(rank);
  for (Eigen::Index i = 0; i < rank; ++i) {
    const Real scale = reduced.row(i).cwiseAbs().maxCoeff();
    if (scale > 0.0) {
      reduced.row(i) /= scale;
      rhs(i) /= scale;
    }
  }
  const PhaseOne p1 = phase_one(reduced, rhs, opts);
  out.iterations = p1.iterations;
  out.x = p1.x;
  if (p1.objective > opts.objective_tol) {
    out.residual = p1.objective;
    return out;
  }

  // Accumulated pivot error: recompute the basic solution from a fresh
  // factorization of the original columns and keep it if it is better.
  const Real tableau_residual = (a * out.x - b).cwiseAbs().maxCoeff();
  if (!p1.basic.empty()) {
    RealMatrix cols(a.rows(), static_cast<Eigen::Index>(p1.basic.size()));
    for (std::size_t j = 0; j < p1.basic.size(); ++j) cols.col(static_cast<Eigen::Index>(j)) = a.col(p1.basic[j]);
    const RealVector xb = cols.colPivHouseholderQr().solve(b);
    RealVector x = RealVector::Zero(a.cols());
    for (std::size_t j = 0; j < p1.basic.size(); ++j) x(p1.basic[j]) = std::max<Real>(0.0, xb(static_cast<Eigen::Index>(j)));
    const Real refactored_residual = (a * x - b).cwiseAbs().maxCoeff();
    if (refactored_residual < tableau_residual) out.x = std::move(x);
  }
  out.residual = (a * out.x - b).cwiseAbs().maxCoeff();
  const Real bscale = std::max<Real>(1.0, b.cwiseAbs().maxCoeff());
  if (out.residual > std::sqrt(opts.objective_tol) * bscale) {
    // The simplex claimed feasibility but no accurate point backs it up.
    return out;
  }
  out.feasible = true;
  return out;
}

}  // namespace avqc
