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

#include "avqclab/symmetrizability.hpp"

#include <cmath>

#include <Eigen/QR>

#include "avqclab/parallel.hpp"

namespace avqc {

namespace {

// Real coordinates of a matrix entry set. Hermitian tables only need the
// upper triangle: real parts on and above the diagonal, imaginary parts above.
struct EntryLayout {
  bool hermitian;
  Eigen::Index rows;
  Eigen::Index cols;

  Eigen::Index count() const { return hermitian ? rows * rows : 2 * rows * cols; }

  template <typename Emit>
  void for_each(const ComplexMatrix& m, Emit&& emit) const {
    Eigen::Index k = 0;
    if (hermitian) {
      for (Eigen::Index a = 0; a < rows; ++a) {
        for (Eigen::Index b = a; b < rows; ++b) {
          emit(k++, m(a, b).real());
          if (b > a) emit(k++, m(a, b).imag());
        }
      }
      return;
    }
    for (Eigen::Index a = 0; a < rows; ++a) {
      for (Eigen::Index b = 0; b < cols; ++b) {
        emit(k++, m(a, b).real());
        emit(k++, m(a, b).imag());
      }
    }
  }
};

EntryLayout layout_of(const OutputTable& outputs) {
  const ComplexMatrix& first = outputs.front().front();
  EntryLayout layout{first.rows() == first.cols(), first.rows(), first.cols()};
  for (const auto& row : outputs) {
    for (const auto& m : row) {
      if (m.rows() != first.rows() || m.cols() != first.cols()) {
        throw DimensionError("symmetrization: output shapes differ");
      }
      if (layout.hermitian && hermiticity_defect(m) > 1e-13) layout.hermitian = false;
    }
  }
  return layout;
}

std::vector<std::pair<std::size_t, std::size_t>> duplicates_of(std::span<const ComplexMatrix> probes) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    for (std::size_t j = i + 1; j < probes.size(); ++j) {
      if (probes[i].rows() == probes[j].rows() && max_abs_diff(probes[i], probes[j]) <= 1e-12) {
        out.emplace_back(i, j);
      }
    }
  }
  return out;
}

// Letters whose outputs agree under every state.
std::vector<std::pair<std::size_t, std::size_t>> duplicate_inputs(const OutputTable& outputs) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t k = outputs.front().size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      bool same = true;
      for (const auto& row : outputs) same = same && max_abs_diff(row[i], row[j]) <= 1e-12;
      if (same) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace

void SymmetrizingFamily::validate(const Tolerances& tol) const {
  for (const auto& p : distributions) {
    validate_probability_vector(p, static_cast<Eigen::Index>(labels.size()), "symmetrizing family", tol);
  }
}

Real pairwise_residual(const OutputTable& outputs, const SymmetrizingFamily& family) {
  const std::size_t states = outputs.size();
  const std::size_t k = family.index_count();
  if (states != family.labels.size() || outputs.front().size() != k) {
    throw DimensionError("pairwise_residual: family does not match the output table");
  }
  // mixed[i][j] = sum_s p_j(s) O[s][i]
  Real worst = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      ComplexMatrix diff = ComplexMatrix::Zero(outputs[0][i].rows(), outputs[0][i].cols());
      for (std::size_t s = 0; s < states; ++s) {
        diff += family.distributions[j](s) * outputs[s][i] - family.distributions[i](s) * outputs[s][j];
      }
      if (diff.size() > 0) worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

SymmetrizabilityVerdict solve_pairwise_symmetrization(const OutputTable& outputs, std::vector<std::string> labels,
                                                      const SymmetrizabilityOptions& opts) {
  if (outputs.empty()) throw ValidationError("symmetrization: empty state set");
  const std::size_t states = outputs.size();
  const std::size_t k = outputs.front().size();
  if (k < 2) throw ValidationError("symmetrization: at least two probes are required");
  for (const auto& row : outputs) {
    if (row.size() != k) throw DimensionError("symmetrization: ragged output table");
  }
  if (labels.size() != states) throw DimensionError("symmetrization: label count differs from state count");

  const EntryLayout layout = layout_of(outputs);
  const Eigen::Index n = static_cast<Eigen::Index>(k * states);
  const Eigen::Index per_pair = layout.count();
  auto var = [states](std::size_t i, std::size_t s) { return static_cast<Eigen::Index>(i * states + s); };

  // The pair equalities are homogeneous; only their row space matters.
  RowSpaceAccumulator acc(n);
  const Eigen::Index block_rows = std::max<Eigen::Index>(n, 64);
  const std::size_t pairs_per_block = static_cast<std::size_t>(std::max<Eigen::Index>(1, block_rows / per_pair));
  RealMatrix block(0, n);
  std::size_t in_block = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (in_block == 0) block = RealMatrix::Zero(per_pair * static_cast<Eigen::Index>(pairs_per_block), n);
      const Eigen::Index base = per_pair * static_cast<Eigen::Index>(in_block);
      for (std::size_t s = 0; s < states; ++s) {
        layout.for_each(outputs[s][i], [&](Eigen::Index e, Real v) { block(base + e, var(j, s)) += v; });
        layout.for_each(outputs[s][j], [&](Eigen::Index e, Real v) { block(base + e, var(i, s)) -= v; });
      }
      if (++in_block == pairs_per_block) {
        acc.add_rows(block);
        in_block = 0;
      }
    }
  }
  if (in_block > 0) acc.add_rows(block.topRows(per_pair * static_cast<Eigen::Index>(in_block)));

  const RealMatrix homogeneous = acc.reduced(opts.lp.rank_tol);
  RealMatrix a = RealMatrix::Zero(homogeneous.rows() + static_cast<Eigen::Index>(k), n);
  RealVector b = RealVector::Zero(a.rows());
  a.topRows(homogeneous.rows()) = homogeneous;
  for (std::size_t i = 0; i < k; ++i) {
    const Eigen::Index row = homogeneous.rows() + static_cast<Eigen::Index>(i);
    for (std::size_t s = 0; s < states; ++s) a(row, var(i, s)) = 1.0;
    b(row) = 1.0;
  }

  const LpResult lp = solve_feasibility(a, b, opts.lp);
  SymmetrizabilityVerdict verdict;
  if (!lp.feasible) {
    verdict.residual = lp.residual;
    return verdict;
  }

  SymmetrizingFamily family{std::move(labels), {}};
  for (std::size_t i = 0; i < k; ++i) {
    ProbabilityVector p = lp.x.segment(var(i, 0), static_cast<Eigen::Index>(states));
    p /= p.sum();
    family.distributions.push_back(std::move(p));
  }
  // Re-verify by substitution; the reduced program is only trusted this far.
  verdict.residual = pairwise_residual(outputs, family);
  verdict.feasible = verdict.residual <= opts.tol.feas;
  if (verdict.feasible) verdict.witness = std::move(family);
  return verdict;
}

OutputTable sequence_outputs(const Avqc& avqc, std::size_t l, std::span<const ComplexMatrix> probes,
                             std::size_t budget) {
  if (l == 0) throw ValidationError("symmetrization: block length must be positive");
  const std::size_t count = sequence_count(avqc.size(), l, budget);
  const std::size_t d_in = bounded_power(static_cast<std::size_t>(avqc.dim_in()), l, kMaxDimension);
  check_dimension_cap(static_cast<Eigen::Index>(d_in), "symmetrization probes");
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (probes[i].rows() != static_cast<Eigen::Index>(d_in) || probes[i].cols() != static_cast<Eigen::Index>(d_in)) {
      throw DimensionError("symmetrization: probe " + std::to_string(i) + " is not an operator on H^(x)l");
    }
  }
  OutputTable out(count, std::vector<ComplexMatrix>(probes.size()));
  parallel_for(count, [&](std::size_t idx) {
    const StateSequence seq = index_to_digits(idx, avqc.size(), l);
    for (std::size_t i = 0; i < probes.size(); ++i) out[idx][i] = apply_sequence(avqc, seq, probes[i]);
  });
  return out;
}

SymmetrizabilityVerdict check_symmetrizable_operators(const Avqc& avqc, std::size_t l,
                                                      std::span<const ComplexMatrix> probes,
                                                      const SymmetrizabilityOptions& opts) {
  if (probes.size() < 2) throw ValidationError("symmetrization: at least two probes are required");
  const OutputTable outputs = sequence_outputs(avqc, l, probes, opts.budget);
  std::vector<std::string> labels;
  for (std::size_t idx = 0; idx < outputs.size(); ++idx) {
    labels.push_back(sequence_label(avqc.states(), index_to_digits(idx, avqc.size(), l)));
  }
  SymmetrizabilityVerdict verdict = solve_pairwise_symmetrization(outputs, std::move(labels), opts);
  verdict.duplicate_probes = duplicates_of(probes);
  return verdict;
}

SymmetrizabilityVerdict check_symmetrizable(const Avqc& avqc, std::size_t l, std::span<const DensityMatrix> probes,
                                            const SymmetrizabilityOptions& opts) {
  std::vector<ComplexMatrix> ops;
  for (const auto& rho : probes) ops.push_back(rho.matrix());
  return check_symmetrizable_operators(avqc, l, ops, opts);
}

SymmetrizabilityVerdict check_symmetrizable_pure(const Avqc& avqc, std::size_t l, std::span<const PureState> probes,
                                                 const SymmetrizabilityOptions& opts) {
  std::vector<ComplexMatrix> ops;
  for (const auto& psi : probes) ops.push_back(psi.projector());
  return check_symmetrizable_operators(avqc, l, ops, opts);
}

std::vector<ComplexMatrix> geometric_frame(Eigen::Index dim) {
  if (dim < 1) throw DimensionError("geometric_frame: dimension must be positive");
  check_dimension_cap(dim * dim, "geometric frame");
  const Real inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex i_unit(0.0, 1.0);

  // Hilbert-Schmidt orthonormal traceless Hermitian basis.
  std::vector<ComplexMatrix> gell_mann;
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = a + 1; b < dim; ++b) {
      gell_mann.push_back((matrix_unit(dim, a, b) + matrix_unit(dim, b, a)) * inv_sqrt2);
    }
  }
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = a + 1; b < dim; ++b) {
      gell_mann.push_back((-i_unit * matrix_unit(dim, a, b) + i_unit * matrix_unit(dim, b, a)) * inv_sqrt2);
    }
  }
  for (Eigen::Index m = 1; m < dim; ++m) {
    ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < m; ++j) g(j, j) = 1.0;
    g(m, m) = -Real(m);
    gell_mann.push_back(g / std::sqrt(Real(m * (m + 1))));
  }

  const Eigen::Index n = dim * dim - 1;
  const ComplexMatrix centre = ComplexMatrix::Identity(dim, dim) / Real(dim);
  if (n == 0) return {centre};
  // Regular simplex with unit circumradius in Helmert coordinates; scaling the
  // circumradius by n makes the inradius 1, then by the state-space radius.
  const Real scale = Real(n) * std::sqrt(1.0 - 1.0 / Real(dim)) * std::sqrt(Real(n + 1) / Real(n));
  std::vector<ComplexMatrix> frame;
  for (Eigen::Index i = 0; i <= n; ++i) {
    ComplexMatrix a = centre;
    for (Eigen::Index k = 1; k <= n; ++k) {
      const Real norm = std::sqrt(Real(k * (k + 1)));
      const Real h = i < k ? 1.0 / norm : (i == k ? -Real(k) / norm : 0.0);
      if (h != 0.0) a += scale * h * gell_mann[k - 1];
    }
    frame.push_back(std::move(a));
  }
  return frame;
}

RealVector frame_coordinates(std::span<const ComplexMatrix> frame, const ComplexMatrix& op) {
  if (frame.empty()) throw ValidationError("frame_coordinates: empty frame");
  const Eigen::Index dim = frame.front().rows();
  if (op.rows() != dim || op.cols() != dim) throw DimensionError("frame_coordinates: operator dimension mismatch");
  const Eigen::Index entries = dim * dim;
  const Eigen::Index k = static_cast<Eigen::Index>(frame.size());
  RealMatrix a(2 * entries + 1, k);
  RealVector b(2 * entries + 1);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index e = 0; e < entries; ++e) {
      a(2 * e, j) = frame[j](e).real();
      a(2 * e + 1, j) = frame[j](e).imag();
    }
    a(2 * entries, j) = 1.0;
  }
  for (Eigen::Index e = 0; e < entries; ++e) {
    b(2 * e) = op(e).real();
    b(2 * e + 1) = op(e).imag();
  }
  b(2 * entries) = 1.0;
  const RealVector lambda = a.colPivHouseholderQr().solve(b);
  if ((a * lambda - b).cwiseAbs().maxCoeff() > 1e-9) {
    throw ValidationError("frame_coordinates: operator is outside the affine span of the frame");
  }
  return lambda;
}

SymmetrizabilityVerdict check_l_symmetrizable(const Avqc& avqc, std::size_t l, const SymmetrizabilityOptions& opts) {
  const std::size_t d = bounded_power(static_cast<std::size_t>(avqc.dim_in()), l, kMaxDimension);
  check_dimension_cap(static_cast<Eigen::Index>(d), "l-symmetrizability");
  const std::vector<ComplexMatrix> frame = geometric_frame(static_cast<Eigen::Index>(d));
  if (frame.size() < 2) {
    // One-dimensional inputs: a single probe makes the condition vacuous.
    SymmetrizabilityVerdict verdict;
    verdict.feasible = true;
    const std::size_t count = sequence_count(avqc.size(), l, opts.budget);
    SymmetrizingFamily family;
    for (std::size_t idx = 0; idx < count; ++idx) {
      family.labels.push_back(sequence_label(avqc.states(), index_to_digits(idx, avqc.size(), l)));
    }
    family.distributions.push_back(RealVector::Constant(count, 1.0 / Real(count)));
    verdict.witness = std::move(family);
    return verdict;
  }
  return check_symmetrizable_operators(avqc, l, frame, opts);
}

SymmetrizingFamily extend_family(std::span<const ComplexMatrix> base_points, const SymmetrizingFamily& base_family,
                                 std::span<const ComplexMatrix> new_points, const RealMatrix& mixing,
                                 const Tolerances& tol) {
  const Eigen::Index k = static_cast<Eigen::Index>(base_points.size());
  const Eigen::Index total = k + static_cast<Eigen::Index>(new_points.size());
  if (base_family.index_count() != base_points.size()) {
    throw DimensionError("extend_family: family size differs from the number of base points");
  }
  if (mixing.rows() != total || mixing.cols() != k) {
    throw DimensionError("extend_family: mixing matrix must be (base + new) x base");
  }
  for (Eigen::Index i = 0; i < total; ++i) {
    if (mixing.row(i).minCoeff() < -tol.prob || std::abs(mixing.row(i).sum() - 1.0) > tol.prob) {
      throw ValidationError("extend_family: mixing row " + std::to_string(i) + " is not a probability vector");
    }
  }
  if (max_abs_diff(mixing.topRows(k), RealMatrix::Identity(k, k)) > tol.prob) {
    throw ValidationError("extend_family: mixing must be the identity on the base points");
  }

  SymmetrizingFamily out = base_family;
  for (Eigen::Index i = k; i < total; ++i) {
    const ComplexMatrix& target = new_points[static_cast<std::size_t>(i - k)];
    ComplexMatrix combo = ComplexMatrix::Zero(target.rows(), target.cols());
    ProbabilityVector p = ProbabilityVector::Zero(static_cast<Eigen::Index>(base_family.labels.size()));
    for (Eigen::Index j = 0; j < k; ++j) {
      if (base_points[j].rows() != target.rows() || base_points[j].cols() != target.cols()) {
        throw DimensionError("extend_family: point dimensions differ");
      }
      combo += mixing(i, j) * base_points[j];
      p += mixing(i, j) * base_family.distributions[j];
    }
    if (max_abs_diff(combo, target) > 1e-9) {
      throw ValidationError("extend_family: new point " + std::to_string(i - k) +
                            " is not the stated mixture of base points");
    }
    out.distributions.push_back(std::move(p));
  }
  return out;
}

SymmetrizabilityVerdict check_symmetrizable_classical(const ClassicalAvc& avc, const SymmetrizabilityOptions& opts) {
  OutputTable outputs(avc.size());
  for (std::size_t t = 0; t < avc.size(); ++t) {
    for (Eigen::Index i = 0; i < avc.inputs(); ++i) {
      outputs[t].push_back(avc.kernel(t).row(i).cast<Complex>());
    }
  }
  SymmetrizabilityVerdict verdict = solve_pairwise_symmetrization(outputs, avc.states(), opts);
  verdict.duplicate_probes = duplicate_inputs(outputs);
  return verdict;
}

SymmetrizabilityVerdict check_symmetrizable_cq(const AvCqc& avcqc, const SymmetrizabilityOptions& opts) {
  if (avcqc.alphabet_size() > opts.budget) throw BudgetExceeded("check_symmetrizable_cq: alphabet exceeds budget");
  OutputTable outputs(avcqc.size());
  for (std::size_t s = 0; s < avcqc.size(); ++s) {
    for (const auto& w : avcqc.channel(s).outputs()) outputs[s].push_back(w.matrix());
  }
  SymmetrizabilityVerdict verdict = solve_pairwise_symmetrization(outputs, avcqc.states(), opts);
  verdict.duplicate_probes = duplicate_inputs(outputs);
  return verdict;
}

}  // namespace avqc
