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

#include "avqclab/info.hpp"

#include <cmath>

namespace avqc {

Real shannon_entropy(const RealVector& p, Real floor) {
  Real h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) > floor) h -= p(i) * std::log2(p(i));
  }
  return h;
}

Real binary_entropy(Real p) {
  RealVector v(2);
  v << p, 1.0 - p;
  return shannon_entropy(v);
}

Real von_neumann_entropy_unchecked(const ComplexMatrix& rho) {
  return std::max<Real>(0.0, shannon_entropy(hermitian_eigenvalues(rho), kTol.psd));
}

Real von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy_unchecked(rho.matrix()); }

Real holevo_chi_unchecked(const ProbabilityVector& p, std::span<const ComplexMatrix> outputs,
                          const RealVector& output_entropies) {
  ComplexMatrix avg = ComplexMatrix::Zero(outputs.front().rows(), outputs.front().cols());
  Real mean_entropy = 0.0;
  for (std::size_t z = 0; z < outputs.size(); ++z) {
    if (p(z) == 0.0) continue;
    avg += p(z) * outputs[z];
    mean_entropy += p(z) * output_entropies(z);
  }
  return std::max<Real>(0.0, von_neumann_entropy_unchecked(avg) - mean_entropy);
}

Real holevo_chi(const ProbabilityVector& p, const CqChannel& w) {
  validate_probability_vector(p, static_cast<Eigen::Index>(w.size()), "holevo_chi");
  std::vector<ComplexMatrix> outs;
  RealVector entropies(w.size());
  for (std::size_t z = 0; z < w.size(); ++z) {
    outs.push_back(w.output(z).matrix());
    entropies(z) = von_neumann_entropy(w.output(z));
  }
  return holevo_chi_unchecked(p, outs, entropies);
}

Real mutual_information(const RealMatrix& joint) {
  const RealVector px = joint.rowwise().sum();
  const RealVector py = joint.colwise().sum().transpose();
  const RealVector pxy = joint.reshaped();
  return shannon_entropy(px) + shannon_entropy(py) - shannon_entropy(pxy);
}

Real mutual_information(const BipartiteSource& src) { return mutual_information(src.joint()); }

Real entanglement_fidelity(const DensityMatrix& rho, const QuantumChannel& ch) {
  if (ch.dim_in() != rho.dim() || ch.dim_out() != rho.dim()) {
    throw DimensionError("entanglement_fidelity: channel must act on the state's space");
  }
  Real f = 0.0;
  for (const auto& k : ch.kraus()) f += std::norm((rho.matrix() * k).trace());
  return f;
}

Real entanglement_fidelity_maximally_mixed(Eigen::Index dim,
                                           const std::function<ComplexMatrix(const ComplexMatrix&)>& action) {
  Complex total = 0.0;
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      const ComplexMatrix out = action(matrix_unit(dim, a, b));
      if (out.rows() != dim || out.cols() != dim) {
        throw DimensionError("entanglement_fidelity: map does not return to the reference space");
      }
      total += out(a, b);
    }
  }
  return total.real() / Real(dim * dim);
}

}  // namespace avqc
