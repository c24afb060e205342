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

#include <algorithm>
#include <numeric>

#include "avqclab/symmetrizability.hpp"
#include "support.hpp"

using namespace avqc;
using namespace avqc::testing;

namespace {

Avqc constant_pair() {
  ComplexMatrix sigma_b(2, 2);
  sigma_b << 0.3, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.7;
  return Avqc({"a", "b"}, {channels::constant(2, DensityMatrix::basis(2, 0)),
                           channels::constant(2, DensityMatrix(sigma_b))});
}

Avqc singleton_identity() { return Avqc({"id"}, {channels::identity(2)}); }

std::vector<DensityMatrix> basis_probes() { return {DensityMatrix::basis(2, 0), DensityMatrix::basis(2, 1)}; }

RealMatrix bsc(Real p) {
  RealMatrix k(2, 2);
  k << 1 - p, p, p, 1 - p;
  return k;
}

std::vector<ComplexMatrix> matrices_of(const std::vector<DensityMatrix>& states) {
  std::vector<ComplexMatrix> out;
  for (const auto& s : states) out.push_back(s.matrix());
  return out;
}

Real witness_residual(const Avqc& avqc, const std::vector<ComplexMatrix>& probes, const SymmetrizingFamily& family) {
  return pairwise_residual(sequence_outputs(avqc, 1, probes), family);
}

}  // namespace

TEST_CASE("constant pair is symmetrizable with equal distributions") {
  const auto probes = basis_probes();
  const SymmetrizabilityVerdict v = check_symmetrizable(constant_pair(), 1, probes);
  REQUIRE(v.feasible);
  REQUIRE(v.witness.has_value());
  CHECK(v.residual <= 1e-7);
  const auto& d = v.witness->distributions;
  CHECK((d[0] - d[1]).cwiseAbs().maxCoeff() < 1e-7);
  CHECK(v.witness->labels == std::vector<std::string>{"a", "b"});
}

TEST_CASE("singleton identity is not symmetrizable") {
  const auto probes = basis_probes();
  const SymmetrizabilityVerdict v = check_symmetrizable(singleton_identity(), 1, probes);
  CHECK_FALSE(v.feasible);
  CHECK_FALSE(v.witness.has_value());
  CHECK(v.residual > 0.1);
}

TEST_CASE("pure probe examples") {
  Rng rng(40);
  const std::vector<PureState> pure = {random_pure(rng, 2), random_pure(rng, 2), random_pure(rng, 2)};
  CHECK(check_symmetrizable_pure(constant_pair(), 1, pure).feasible);
  const std::vector<PureState> two = {pure[0], pure[1]};
  CHECK_FALSE(check_symmetrizable_pure(singleton_identity(), 1, two).feasible);
}

TEST_CASE("duplicate probes are allowed and flagged") {
  const DensityMatrix zero = DensityMatrix::basis(2, 0);
  const std::vector<DensityMatrix> probes = {zero, zero, DensityMatrix::basis(2, 1)};
  const SymmetrizabilityVerdict v = check_symmetrizable(constant_pair(), 1, probes);
  CHECK(v.feasible);
  REQUIRE(v.duplicate_probes.size() == 1);
  CHECK(v.duplicate_probes[0] == std::pair<std::size_t, std::size_t>{0, 1});
  // Identical probes alone never obstruct symmetrization.
  const std::vector<DensityMatrix> same = {zero, zero};
  CHECK(check_symmetrizable(singleton_identity(), 1, same).feasible);
}

TEST_CASE("probe validation") {
  const std::vector<DensityMatrix> one = {DensityMatrix::basis(2, 0)};
  CHECK_THROWS_AS(check_symmetrizable(constant_pair(), 1, one), ValidationError);
  const std::vector<DensityMatrix> wrong = {DensityMatrix::basis(3, 0), DensityMatrix::basis(3, 1)};
  CHECK_THROWS_AS(check_symmetrizable(constant_pair(), 1, wrong), DimensionError);
}

TEST_CASE("block length two") {
  Rng rng(41);
  std::vector<DensityMatrix> probes = {random_state(rng, 4), random_state(rng, 4), random_state(rng, 4)};
  const SymmetrizabilityVerdict v = check_symmetrizable(constant_pair(), 2, probes);
  REQUIRE(v.feasible);
  CHECK(v.witness->labels.size() == 4);
  CHECK(v.witness->labels[1] == "a,b");
  CHECK_FALSE(check_symmetrizable(singleton_identity(), 2, probes).feasible);
}

TEST_CASE("geometric frame contains the state space") {
  for (Eigen::Index d : {2, 3, 4}) {
    const std::vector<ComplexMatrix> frame = geometric_frame(d);
    CHECK(frame.size() == static_cast<std::size_t>(d * d));
    for (const auto& a : frame) {
      CHECK(hermiticity_defect(a) < 1e-12);
      CHECK(std::abs(a.trace().real() - 1.0) < 1e-12);
    }
    Rng rng(42 + d);
    for (int trial = 0; trial < 50; ++trial) {
      const DensityMatrix rho = trial % 2 ? DensityMatrix(random_pure(rng, d)) : random_state(rng, d);
      const RealVector lambda = frame_coordinates(frame, rho.matrix());
      CHECK(lambda.minCoeff() >= -1e-9);
      CHECK(std::abs(lambda.sum() - 1.0) < 1e-9);
      ComplexMatrix back = ComplexMatrix::Zero(d, d);
      for (std::size_t i = 0; i < frame.size(); ++i) back += lambda(static_cast<Eigen::Index>(i)) * frame[i];
      CHECK(max_abs_diff(back, rho.matrix()) < 1e-9);
    }
  }
}

TEST_CASE("l-symmetrizability through the frame") {
  CHECK(check_l_symmetrizable(constant_pair(), 1).feasible);
  CHECK(check_l_symmetrizable(constant_pair(), 2).feasible);
  CHECK_FALSE(check_l_symmetrizable(singleton_identity(), 1).feasible);
  Rng rng(43);
  const Avqc mp = measure_prepare_family(random_unitary(rng, 2), {random_state(rng, 2), random_state(rng, 2)});
  CHECK(check_l_symmetrizable(mp, 1).feasible);
  const Avqc trivial({"a", "b"}, {channels::identity(1), channels::identity(1)});
  CHECK(check_l_symmetrizable(trivial, 3).feasible);
}

TEST_CASE("extend_family examples") {
  const auto probes = matrices_of(basis_probes());
  const Avqc avqc = constant_pair();
  const SymmetrizingFamily base = *check_symmetrizable(avqc, 1, basis_probes()).witness;

  const SymmetrizingFamily same = extend_family(probes, base, {}, RealMatrix::Identity(2, 2));
  CHECK(same.index_count() == 2);
  CHECK((same.distributions[1] - base.distributions[1]).cwiseAbs().maxCoeff() == 0.0);

  // Midpoint of two points gets the midpoint distribution.
  SymmetrizingFamily hand;
  hand.labels = {"a", "b"};
  RealVector p0(2), p1(2);
  p0 << 0.2, 0.8;
  p1 << 0.6, 0.4;
  hand.distributions = {p0, p1};
  const std::vector<ComplexMatrix> mid = {(probes[0] + probes[1]) / 2.0};
  RealMatrix mixing(3, 2);
  mixing << 1, 0, 0, 1, 0.5, 0.5;
  const SymmetrizingFamily ext = extend_family(probes, hand, mid, mixing);
  CHECK((ext.distributions[2] - (p0 + p1) / 2.0).cwiseAbs().maxCoeff() < 1e-15);

  RealMatrix wrong(3, 2);
  wrong << 1, 0, 0, 1, 0.3, 0.7;
  CHECK_THROWS_AS(extend_family(probes, hand, mid, wrong), ValidationError);
  RealMatrix not_identity(3, 2);
  not_identity << 0, 1, 1, 0, 0.5, 0.5;
  CHECK_THROWS_AS(extend_family(probes, hand, mid, not_identity), ValidationError);
}

TEST_CASE("classical symmetrizability examples") {
  const ClassicalAvc flips({"keep", "flip"}, {bsc(0.0), bsc(1.0)});
  const SymmetrizabilityVerdict v = check_symmetrizable_classical(flips);
  CHECK(v.feasible);
  // The hand-solved witness sigma(.|0) = (1, 0), sigma(.|1) = (0, 1) also
  // satisfies every equality by substitution.
  OutputTable table(2);
  for (std::size_t t = 0; t < 2; ++t) {
    for (Eigen::Index i = 0; i < 2; ++i) table[t].push_back(flips.kernel(t).row(i).cast<Complex>());
  }
  SymmetrizingFamily hand;
  hand.labels = {"keep", "flip"};
  RealVector s0(2), s1(2);
  s0 << 1.0, 0.0;
  s1 << 0.0, 1.0;
  hand.distributions = {s0, s1};
  CHECK(pairwise_residual(table, hand) == 0.0);
  CHECK(pairwise_residual(table, *v.witness) <= 1e-7);

  CHECK_FALSE(check_symmetrizable_classical(ClassicalAvc({"t"}, {bsc(0.1)})).feasible);
  CHECK(check_symmetrizable_classical(ClassicalAvc({"t"}, {bsc(0.5)})).feasible);
}

TEST_CASE("cq symmetrizability examples") {
  const DensityMatrix zero = DensityMatrix::basis(2, 0);
  const DensityMatrix one = DensityMatrix::basis(2, 1);
  Rng rng(44);
  const DensityMatrix r = random_state(rng, 2);
  const AvCqc constants({"a", "b"}, {CqChannel({"0", "1"}, {zero, zero}), CqChannel({"0", "1"}, {r, r})});
  CHECK(check_symmetrizable_cq(constants).feasible);
  CHECK_FALSE(check_symmetrizable_cq(AvCqc({"a"}, {CqChannel({"0", "1"}, {zero, one})})).feasible);

  const AvCqc swap({"keep", "swap"}, {CqChannel({"0", "1"}, {zero, one}), CqChannel({"0", "1"}, {one, zero})});
  const SymmetrizabilityVerdict v = check_symmetrizable_cq(swap);
  const Real grid_gap = grid_symmetrization_gap({zero.matrix(), one.matrix()}, {one.matrix(), zero.matrix()}, 100);
  CHECK(grid_gap < 1e-9);
  CHECK(v.feasible == (grid_gap < 1e-6));
  REQUIRE(v.witness.has_value());
  // sum_s tau(s|1) W_s(0) = sum_s tau(s|0) W_s(1) forces tau(keep|1) = tau(swap|0).
  CHECK(std::abs(v.witness->distributions[1](0) - v.witness->distributions[0](1)) < 1e-7);
}

TEST_CASE("property: soundness by substitution") {
  Rng rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    const Avqc avqc = measure_prepare_family(random_unitary(rng, 2), {random_state(rng, 2), random_state(rng, 2)});
    std::vector<DensityMatrix> probes;
    for (int k = 0; k < 4; ++k) probes.push_back(random_state(rng, 2));
    const SymmetrizabilityVerdict v = check_symmetrizable(avqc, 1, probes);
    REQUIRE(v.feasible);
    v.witness->validate();
    CHECK(witness_residual(avqc, matrices_of(probes), *v.witness) <= 1e-6);
    CHECK(v.residual <= 1e-7);
  }
}

TEST_CASE("property: infeasibility is inherited by larger hulls") {
  Rng rng(46);
  int infeasible_seen = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Avqc avqc({"a", "b"}, {random_channel(rng, 2, 2, 2), random_channel(rng, 2, 2, 2)});
    // outer: random pure states; inner: random mixtures of them.
    std::vector<DensityMatrix> outer;
    for (int k = 0; k < 4; ++k) outer.push_back(DensityMatrix(random_pure(rng, 2)));
    std::vector<DensityMatrix> inner;
    for (int k = 0; k < 2; ++k) {
      const ProbabilityVector w = random_distribution(rng, 4);
      ComplexMatrix m = ComplexMatrix::Zero(2, 2);
      for (int j = 0; j < 4; ++j) m += w(j) * outer[j].matrix();
      inner.push_back(DensityMatrix(hermitian_part(m)));
    }
    const bool inner_ok = check_symmetrizable(avqc, 1, inner).feasible;
    const bool outer_ok = check_symmetrizable(avqc, 1, outer).feasible;
    if (!inner_ok) {
      ++infeasible_seen;
      CHECK_FALSE(outer_ok);
    }
    if (outer_ok) CHECK(inner_ok);
  }
  CHECK(infeasible_seen > 0);
}

TEST_CASE("property: hull extension keeps every equality") {
  Rng rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const Avqc avqc = measure_prepare_family(random_unitary(rng, 2), {random_state(rng, 2), random_state(rng, 2)});
    std::vector<DensityMatrix> base;
    for (int k = 0; k < 3; ++k) base.push_back(DensityMatrix(random_pure(rng, 2)));
    const SymmetrizingFamily family = *check_symmetrizable(avqc, 1, base).witness;
    const auto base_m = matrices_of(base);
    std::vector<ComplexMatrix> extra;
    RealMatrix mixing = RealMatrix::Zero(6, 3);
    mixing.topRows(3).setIdentity();
    for (int j = 0; j < 3; ++j) {
      const ProbabilityVector w = random_distribution(rng, 3);
      mixing.row(3 + j) = w.transpose();
      ComplexMatrix m = ComplexMatrix::Zero(2, 2);
      for (int i = 0; i < 3; ++i) m += w(i) * base_m[i];
      extra.push_back(m);
    }
    const SymmetrizingFamily ext = extend_family(base_m, family, extra, mixing);
    std::vector<ComplexMatrix> all = base_m;
    all.insert(all.end(), extra.begin(), extra.end());
    CHECK(pairwise_residual(sequence_outputs(avqc, 1, all), ext) <= 1e-9);
  }
}

TEST_CASE("property: verdict invariant under relabeling states and permuting probes") {
  Rng rng(48);
  for (int trial = 0; trial < 10; ++trial) {
    const bool structured = trial % 2 == 0;
    const Avqc avqc = structured ? measure_prepare_family(random_unitary(rng, 2),
                                                          {random_state(rng, 2), random_state(rng, 2)})
                                 : Avqc({"a", "b"}, {random_channel(rng, 2, 2, 2), random_channel(rng, 2, 2, 1)});
    const Avqc relabeled({"y", "x"}, {avqc.channel(1), avqc.channel(0)});
    std::vector<DensityMatrix> probes;
    for (int k = 0; k < 3; ++k) probes.push_back(random_state(rng, 2));
    std::vector<DensityMatrix> permuted = {probes[2], probes[0], probes[1]};
    const bool v = check_symmetrizable(avqc, 1, probes).feasible;
    CHECK(v == structured);
    CHECK(check_symmetrizable(relabeled, 1, probes).feasible == v);
    CHECK(check_symmetrizable(avqc, 1, permuted).feasible == v);
  }
}
