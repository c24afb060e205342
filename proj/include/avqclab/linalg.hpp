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

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "avqclab/types.hpp"

namespace avqc {

template <typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> kron(const Eigen::MatrixBase<DerivedA>& a,
                                       const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Matrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b.template cast<Scalar>();
    }
  }
  return out;
}

template <typename Derived>
Matrix<typename Derived::Scalar> hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  return (m + m.adjoint()) / typename Derived::RealScalar(2);
}

template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Eigenvalues (ascending) of the Hermitized matrix.
template <typename Derived>
Vector<typename Derived::RealScalar> hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m) {
  Eigen::SelfAdjointEigenSolver<Matrix<typename Derived::Scalar>> solver(hermitian_part(m),
                                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

template <typename Derived>
typename Derived::RealScalar min_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
  return hermitian_eigenvalues(m).minCoeff();
}

template <typename Derived>
bool is_psd(const Eigen::MatrixBase<Derived>& m, typename Derived::RealScalar tol) {
  return m.rows() == m.cols() && min_eigenvalue(m) >= -tol;
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar max_abs_diff(const Eigen::MatrixBase<DerivedA>& a,
                                           const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() == 0) return 0;
  return (a - b).cwiseAbs().maxCoeff();
}

/// |i><j| in dimension dim.
inline ComplexMatrix matrix_unit(Eigen::Index dim, Eigen::Index i, Eigen::Index j) {
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(i, j) = 1.0;
  return m;
}

inline ComplexVector basis_ket(Eigen::Index dim, Eigen::Index i) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(i) = 1.0;
  return v;
}

/// 1_left (x) op (x) 1_right.
template <typename Derived>
Matrix<typename Derived::Scalar> embed_local(const Eigen::MatrixBase<Derived>& op, Eigen::Index left,
                                             Eigen::Index right) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> inner = kron(op, Matrix<Scalar>::Identity(right, right));
  if (left == 1) return inner;
  return kron(Matrix<Scalar>::Identity(left, left), inner);
}

/// Hilbert-Schmidt inner product tr(a^dagger b).
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar hs_inner(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return a.conjugate().cwiseProduct(b).sum();
}

}  // namespace avqc
