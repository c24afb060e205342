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

#include <functional>
#include <span>

#include "avqclab/avqc.hpp"
#include "avqclab/quantum.hpp"
#include "avqclab/source.hpp"

// All information quantities are in bits.

namespace avqc {

/// -sum p log2 p with 0 log 0 = 0; entries at or below `floor` are dropped.
Real shannon_entropy(const RealVector& p, Real floor = 0.0);
Real binary_entropy(Real p);

/// S(rho) = -tr rho log2 rho, eigenvalues below tol_psd contribute nothing.
Real von_neumann_entropy(const DensityMatrix& rho);
/// Same, on an already Hermitian matrix without validation.
Real von_neumann_entropy_unchecked(const ComplexMatrix& rho);

/// chi(p, W) = S(sum p(z) W(z)) - sum p(z) S(W(z)).
Real holevo_chi(const ProbabilityVector& p, const CqChannel& w);
/// Same for raw outputs, with output entropies S(W(z)) supplied.
Real holevo_chi_unchecked(const ProbabilityVector& p, std::span<const ComplexMatrix> outputs,
                          const RealVector& output_entropies);

/// I(X;Y) = H(X) + H(Y) - H(X,Y).
Real mutual_information(const BipartiteSource& src);
Real mutual_information(const RealMatrix& joint);

/// F_e(rho, N) = sum_k |tr(rho K_k)|^2.
Real entanglement_fidelity(const DensityMatrix& rho, const QuantumChannel& ch);

/// F_e(pi, L) for the maximally mixed state on a dim-dimensional space and a
/// linear map given by its action: (1/d^2) sum_{ab} <a| L(|a><b|) |b>.
Real entanglement_fidelity_maximally_mixed(Eigen::Index dim,
                                           const std::function<ComplexMatrix(const ComplexMatrix&)>& action);

}  // namespace avqc
