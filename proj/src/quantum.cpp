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

#include "avqclab/quantum.hpp"

#include <cmath>
#include <sstream>

namespace avqc {

namespace {

std::string dims_str(Eigen::Index r, Eigen::Index c) {
  std::ostringstream os;
  os << r << "x" << c;
  return os.str();
}

}  // namespace

void check_dimension_cap(Eigen::Index dim, const char* what) {
  if (dim < 1) throw DimensionError(std::string(what) + ": dimension must be positive");
  if (static_cast<std::size_t>(dim) > kMaxDimension) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(dim) + " exceeds cap " +
                         std::to_string(kMaxDimension));
  }
}

void validate_probability_vector(const ProbabilityVector& q, Eigen::Index size, const char* what,
                                 const Tolerances& tol) {
  if (q.size() != size) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(size) + " weights, got " +
                         std::to_string(q.size()));
  }
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    if (!std::isfinite(q(i)) || q(i) < 0.0) {
      throw ValidationError(std::string(what) + ": weight " + std::to_string(i) + " is negative or not finite");
    }
  }
  if (std::abs(q.sum() - 1.0) > tol.prob) {
    throw ValidationError(std::string(what) + ": weights sum to " + std::to_string(q.sum()));
  }
}

PureState::PureState(ComplexVector amplitudes, const Tolerances& tol) : amplitudes_(std::move(amplitudes)) {
  check_dimension_cap(amplitudes_.size(), "pure state");
  if (!amplitudes_.allFinite()) throw ValidationError("pure state: non-finite amplitude");
  if (std::abs(amplitudes_.norm() - 1.0) > tol.norm) {
    throw ValidationError("pure state: norm " + std::to_string(amplitudes_.norm()) + " differs from 1");
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, const Tolerances& tol) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw DimensionError("density matrix: not square (" + dims_str(matrix_.rows(), matrix_.cols()) + ")");
  }
  check_dimension_cap(matrix_.rows(), "density matrix");
  if (!matrix_.allFinite()) throw ValidationError("density matrix: non-finite entry");
  if (hermiticity_defect(matrix_) > tol.herm) throw ValidationError("density matrix: not Hermitian");
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0)) > tol.trace) {
    throw ValidationError("density matrix: trace " + std::to_string(tr.real()) + " differs from 1");
  }
  if (min_eigenvalue(matrix_) < -tol.psd) throw ValidationError("density matrix: negative eigenvalue");
}

DensityMatrix::DensityMatrix(const PureState& psi) : matrix_(psi.projector()) {}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  check_dimension_cap(dim, "maximally mixed state");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / Real(dim), Unchecked{});
}

DensityMatrix DensityMatrix::basis(Eigen::Index dim, Eigen::Index i) {
  check_dimension_cap(dim, "basis state");
  if (i < 0 || i >= dim) throw DimensionError("basis state: index out of range");
  return DensityMatrix(matrix_unit(dim, i, i), Unchecked{});
}

QuantumChannel::QuantumChannel(Eigen::Index dim_in, Eigen::Index dim_out, std::vector<ComplexMatrix> kraus,
                               const Tolerances& tol)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  check_dimension_cap(dim_in_, "channel input");
  check_dimension_cap(dim_out_, "channel output");
  if (kraus_.empty()) throw ValidationError("channel: empty Kraus family");
  ComplexMatrix completeness = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (std::size_t k = 0; k < kraus_.size(); ++k) {
    const auto& op = kraus_[k];
    if (op.rows() != dim_out_ || op.cols() != dim_in_) {
      throw DimensionError("channel: Kraus operator " + std::to_string(k) + " is " +
                           dims_str(op.rows(), op.cols()) + ", expected " + dims_str(dim_out_, dim_in_));
    }
    if (!op.allFinite()) throw ValidationError("channel: non-finite Kraus entry");
    completeness.noalias() += op.adjoint() * op;
  }
  const Real defect = max_abs_diff(completeness, ComplexMatrix::Identity(dim_in_, dim_in_));
  if (defect > tol.cptp) {
    throw ValidationError("channel: Kraus completeness violated by " + std::to_string(defect));
  }
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& op) const {
  if (op.rows() != dim_in_ || op.cols() != dim_in_) {
    throw DimensionError("channel: input is " + dims_str(op.rows(), op.cols()) + ", expected " +
                         dims_str(dim_in_, dim_in_));
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_out_, dim_out_);
  for (const auto& k : kraus_) out.noalias() += k * op * k.adjoint();
  return out;
}

Povm::Povm(std::vector<ComplexMatrix> elements, const Tolerances& tol) : elements_(std::move(elements)) {
  if (elements_.empty()) throw ValidationError("povm: no elements");
  const Eigen::Index d = elements_.front().rows();
  check_dimension_cap(d, "povm");
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const auto& e = elements_[i];
    if (e.rows() != d || e.cols() != d) throw DimensionError("povm: element " + std::to_string(i) + " has wrong shape");
    if (hermiticity_defect(e) > tol.herm) throw ValidationError("povm: element " + std::to_string(i) + " not Hermitian");
    if (min_eigenvalue(e) < -tol.psd) throw ValidationError("povm: element " + std::to_string(i) + " not PSD");
    total += e;
  }
  if (max_abs_diff(total, ComplexMatrix::Identity(d, d)) > tol.povm) {
    throw ValidationError("povm: elements do not sum to the identity");
  }
}

DensityMatrix apply_channel(const QuantumChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim_in()) {
    throw DimensionError("apply_channel: state dimension " + std::to_string(rho.dim()) + " != channel input " +
                         std::to_string(ch.dim_in()));
  }
  return DensityMatrix(hermitian_part(ch.apply(rho.matrix())));
}

QuantumChannel tensor_channel(std::span<const QuantumChannel> chs) {
  if (chs.empty()) throw ValidationError("tensor_channel: empty list");
  Eigen::Index din = 1;
  Eigen::Index dout = 1;
  for (const auto& ch : chs) {
    din *= ch.dim_in();
    dout *= ch.dim_out();
    check_dimension_cap(din, "tensor_channel input");
    check_dimension_cap(dout, "tensor_channel output");
  }
  std::vector<ComplexMatrix> kraus = chs.front().kraus();
  for (std::size_t c = 1; c < chs.size(); ++c) {
    std::vector<ComplexMatrix> next;
    next.reserve(kraus.size() * chs[c].kraus().size());
    for (const auto& a : kraus) {
      for (const auto& b : chs[c].kraus()) next.push_back(kron(a, b));
    }
    kraus = std::move(next);
  }
  return QuantumChannel(din, dout, std::move(kraus));
}

QuantumChannel mix_channels(std::span<const QuantumChannel> chs, const ProbabilityVector& q) {
  if (chs.empty()) throw ValidationError("mix_channels: empty list");
  validate_probability_vector(q, static_cast<Eigen::Index>(chs.size()), "mix_channels");
  const Eigen::Index din = chs.front().dim_in();
  const Eigen::Index dout = chs.front().dim_out();
  std::vector<ComplexMatrix> kraus;
  for (std::size_t s = 0; s < chs.size(); ++s) {
    if (chs[s].dim_in() != din || chs[s].dim_out() != dout) {
      throw DimensionError("mix_channels: channel " + std::to_string(s) + " has mismatched dimensions");
    }
    if (q(s) == 0.0) continue;
    const Real w = std::sqrt(q(s));
    for (const auto& k : chs[s].kraus()) kraus.push_back(w * k);
  }
  return QuantumChannel(din, dout, std::move(kraus));
}

ProbabilityVector measure(const Povm& povm, const DensityMatrix& rho) {
  if (povm.dim() != rho.dim()) throw DimensionError("measure: POVM and state dimensions differ");
  ProbabilityVector out(povm.size());
  for (std::size_t i = 0; i < povm.size(); ++i) out(i) = hs_inner(povm[i], rho.matrix()).real();
  return out;
}

ComplexMatrix choi_matrix(const QuantumChannel& ch) {
  const Eigen::Index din = ch.dim_in();
  const Eigen::Index dout = ch.dim_out();
  ComplexMatrix choi = ComplexMatrix::Zero(din * dout, din * dout);
  for (Eigen::Index i = 0; i < din; ++i) {
    for (Eigen::Index j = 0; j < din; ++j) {
      choi.block(i * dout, j * dout, dout, dout) = ch.apply(matrix_unit(din, i, j));
    }
  }
  return choi;
}

bool choi_is_psd(const QuantumChannel& ch, Real tol) { return is_psd(choi_matrix(ch), tol); }

namespace paulis {

ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace paulis

namespace channels {

QuantumChannel identity(Eigen::Index dim) { return QuantumChannel(dim, dim, {ComplexMatrix::Identity(dim, dim)}); }

QuantumChannel unitary(const ComplexMatrix& u) { return QuantumChannel(u.cols(), u.rows(), {u}); }

QuantumChannel bit_flip(Real p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("bit_flip: probability out of [0,1]");
  return QuantumChannel(2, 2, {std::sqrt(1.0 - p) * ComplexMatrix::Identity(2, 2), std::sqrt(p) * paulis::x()});
}

QuantumChannel completely_depolarizing(Eigen::Index dim) {
  check_dimension_cap(dim, "depolarizing");
  // Weyl operators X^a Z^b, a,b in Z_d; for d = 2 these are I, Z, X, XZ ~ Y.
  const Real two_pi = 2.0 * std::acos(-1.0);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(dim * dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      ComplexMatrix w = ComplexMatrix::Zero(dim, dim);
      for (Eigen::Index j = 0; j < dim; ++j) {
        w((j + a) % dim, j) = std::polar(1.0, two_pi * Real(b * j) / Real(dim));
      }
      kraus.push_back(w / Real(dim));
    }
  }
  return QuantumChannel(dim, dim, std::move(kraus));
}

QuantumChannel constant(Eigen::Index dim_in, const DensityMatrix& sigma) {
  check_dimension_cap(dim_in, "constant channel");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(sigma.matrix()));
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index k = 0; k < sigma.dim(); ++k) {
    const Real lambda = solver.eigenvalues()(k);
    if (lambda <= 0.0) continue;
    const ComplexVector v = std::sqrt(lambda) * solver.eigenvectors().col(k);
    for (Eigen::Index j = 0; j < dim_in; ++j) kraus.push_back(v * basis_ket(dim_in, j).adjoint());
  }
  // Eigenvalue clipping can leave completeness off by ~1e-15; rescale.
  ComplexMatrix total = ComplexMatrix::Zero(dim_in, dim_in);
  for (const auto& k : kraus) total += k.adjoint() * k;
  const Real scale = 1.0 / std::sqrt(total(0, 0).real());
  for (auto& k : kraus) k *= scale;
  return QuantumChannel(dim_in, sigma.dim(), std::move(kraus));
}

}  // namespace channels

namespace povms {

Povm computational(Eigen::Index dim) {
  std::vector<ComplexMatrix> elements;
  for (Eigen::Index i = 0; i < dim; ++i) elements.push_back(matrix_unit(dim, i, i));
  return Povm(std::move(elements));
}

Povm projective(const ComplexMatrix& basis_columns) {
  std::vector<ComplexMatrix> elements;
  for (Eigen::Index i = 0; i < basis_columns.cols(); ++i) {
    elements.push_back(basis_columns.col(i) * basis_columns.col(i).adjoint());
  }
  return Povm(std::move(elements));
}

}  // namespace povms

}  // namespace avqc
