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

#include <doctest.h>

#include "avqclab/avqc.hpp"
#include "support.hpp"

using namespace avqc;
using avqc::testing::random_channel;
using avqc::testing::random_state;

namespace {

Avqc id_depol() { return Avqc({"id", "dep"}, {channels::identity(2), channels::completely_depolarizing(2)}); }

RealMatrix perfectly_correlated() {
  RealMatrix joint(2, 2);
  joint << 0.5, 0.0, 0.0, 0.5;
  return joint;
}

}  // namespace

TEST_CASE("avqc construction checks") {
  CHECK_THROWS_AS(Avqc({}, {}), ValidationError);
  CHECK_THROWS_AS(Avqc({"a", "b"}, {channels::identity(2)}), ValidationError);
  CHECK_THROWS_AS(Avqc({"a", "b"}, {channels::identity(2), channels::identity(3)}), ValidationError);
  CHECK_THROWS_AS(Avqc({"a", "a"}, {channels::identity(2), channels::identity(2)}), ValidationError);
}

TEST_CASE("product_avqc examples") {
  const Avqc a = id_depol();
  CHECK(product_avqc(a, 3).size() == 8);

  const Avqc single({"u"}, {channels::bit_flip(0.2)});
  const Avqc sq = product_avqc(single, 2);
  CHECK(sq.size() == 1);
  Rng rng(7);
  const DensityMatrix rho = random_state(rng, 4);
  const std::vector<QuantumChannel> two = {channels::bit_flip(0.2), channels::bit_flip(0.2)};
  CHECK(max_abs_diff(sq.channel(0).apply(rho.matrix()), tensor_channel(two).apply(rho.matrix())) < 1e-12);

  const Avqc prod = product_avqc(a, 2);
  // Lexicographic order: (id,id), (id,dep), (dep,id), (dep,dep).
  CHECK(prod.states()[3] == "dep,dep");
  CHECK(max_abs_diff(prod.channel(3).apply(rho.matrix()), ComplexMatrix(ComplexMatrix::Identity(4, 4) / 4.0)) <
        1e-12);
  CHECK_THROWS_AS(product_avqc(a, 17), BudgetExceeded);
  CHECK_NOTHROW(product_avqc(a, 2, 4));
  CHECK_THROWS_AS(product_avqc(a, 3, 4), BudgetExceeded);
}

TEST_CASE("apply_sequence matches the product channel") {
  Rng rng(8);
  const Avqc a({"x", "y", "z"}, {random_channel(rng, 2, 2, 2), random_channel(rng, 2, 2, 3), channels::bit_flip(0.4)});
  const Avqc prod = product_avqc(a, 3);
  const DensityMatrix rho = random_state(rng, 8);
  std::vector<std::size_t> seq(3, 0);
  std::size_t index = 0;
  do {
    CHECK(max_abs_diff(apply_sequence(a, seq, rho.matrix()), prod.channel(index).apply(rho.matrix())) < 1e-12);
    ++index;
  } while (next_tuple(seq, 3));
  CHECK(index == 27);
}

TEST_CASE("associated avcqc examples") {
  const BipartiteSource src(perfectly_correlated());
  const std::vector<DensityMatrix> signals = {DensityMatrix::basis(2, 0), DensityMatrix::basis(2, 1)};
  const Avqc a = id_depol();
  const AvCqc w = build_associated_avcqc(a, 1, src, signals);
  CHECK(w.alphabet_size() == 4);
  CHECK(w.size() == 2);
  CHECK(w.dim() == 4);

  // Letter 0 is the constant function onto signal 0:
  // sum_y (1/2) |y><y| (x) N_s(signal 0).
  for (std::size_t s = 0; s < a.size(); ++s) {
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    for (Eigen::Index y = 0; y < 2; ++y) {
      expected += 0.5 * kron(matrix_unit(2, y, y), a.channel(s).apply(signals[0].matrix()));
    }
    CHECK(max_abs_diff(w.channel(s).output(0).matrix(), expected) < 1e-12);
  }
  // Letter 1 is f(0)=0, f(1)=1; under identity the flag and output agree.
  ComplexMatrix copy = ComplexMatrix::Zero(4, 4);
  copy(0, 0) = 0.5;
  copy(3, 3) = 0.5;
  CHECK(max_abs_diff(w.channel(0).output(1).matrix(), copy) < 1e-12);
}

TEST_CASE("property: associated outputs are states") {
  Rng rng(9);
  RealMatrix joint(2, 3);
  joint << 0.1, 0.2, 0.05, 0.3, 0.15, 0.2;
  const BipartiteSource src(joint);
  const Avqc a({"a", "b"}, {random_channel(rng, 2, 2, 2), random_channel(rng, 2, 2, 2)});
  const std::vector<DensityMatrix> signals = {random_state(rng, 4), random_state(rng, 4)};
  const AvCqc w = build_associated_avcqc(a, 2, src, signals);
  CHECK(w.alphabet_size() == 16);
  CHECK(w.dim() == 9 * 4);
  for (std::size_t s = 0; s < w.size(); ++s) {
    for (std::size_t f = 0; f < w.alphabet_size(); ++f) {
      const ComplexMatrix& m = w.channel(s).output(f).matrix();
      CHECK(std::abs(m.trace().real() - 1.0) < 1e-9);
      CHECK(min_eigenvalue(m) > -1e-8);
    }
  }
  CHECK_THROWS_AS(build_associated_avcqc(a, 2, src, signals, 10), BudgetExceeded);
}

TEST_CASE("reduce_to_classical examples") {
  const std::vector<DensityMatrix> signals = {DensityMatrix::basis(2, 0), DensityMatrix::basis(2, 1)};
  const Povm comp = povms::computational(2);

  const ClassicalAvc ident = reduce_to_classical(Avqc({"id"}, {channels::identity(2)}), signals, comp);
  CHECK((ident.kernel(0) - RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  Rng rng(10);
  const std::vector<DensityMatrix> any = {random_state(rng, 2), random_state(rng, 2), random_state(rng, 2)};
  const ClassicalAvc dep = reduce_to_classical(Avqc({"d"}, {channels::completely_depolarizing(2)}), any, comp);
  CHECK((dep.kernel(0).array() - 0.5).abs().maxCoeff() < 1e-12);

  const ClassicalAvc bf = reduce_to_classical(Avqc({"b"}, {channels::bit_flip(0.3)}), signals, comp);
  RealMatrix expected(2, 2);
  expected << 0.7, 0.3, 0.3, 0.7;
  CHECK((bf.kernel(0) - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("property: classical reductions are stochastic") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Avqc a({"a", "b"}, {random_channel(rng, 3, 2, 2), random_channel(rng, 3, 2, 4)});
    const std::vector<DensityMatrix> signals = {random_state(rng, 3), random_state(rng, 3)};
    const ClassicalAvc c = reduce_to_classical(a, signals, povms::projective(avqc::testing::random_unitary(rng, 2)));
    for (std::size_t t = 0; t < c.size(); ++t) {
      CHECK((c.kernel(t).rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-9);
      CHECK(c.kernel(t).minCoeff() >= -1e-12);
    }
  }
}

TEST_CASE("classical avc validation") {
  RealMatrix bad(2, 2);
  bad << 0.5, 0.6, 0.5, 0.5;
  CHECK_THROWS_AS(ClassicalAvc({"t"}, {bad}), ValidationError);
}
