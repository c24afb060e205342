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
#include <limits>

#include "avqclab/capacity.hpp"
#include "avqclab/info.hpp"
#include "support.hpp"

using namespace avqc;
using namespace avqc::testing;

namespace {

const DensityMatrix kZero = DensityMatrix::basis(2, 0);
const DensityMatrix kOne = DensityMatrix::basis(2, 1);

AvCqc swap_pair() {
  return AvCqc({"keep", "swap"}, {CqChannel({"0", "1"}, {kZero, kOne}), CqChannel({"0", "1"}, {kOne, kZero})});
}

// chi from entropies of explicitly mixed outputs.
Real chi_oracle(const AvCqc& w, const ProbabilityVector& p, const ProbabilityVector& q) {
  const Eigen::Index d = w.dim();
  ComplexMatrix avg = ComplexMatrix::Zero(d, d);
  Real inner = 0.0;
  for (std::size_t z = 0; z < w.alphabet_size(); ++z) {
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (std::size_t s = 0; s < w.size(); ++s) out += q(static_cast<Eigen::Index>(s)) * w.channel(s).output(z).matrix();
    const Real pz = p(static_cast<Eigen::Index>(z));
    avg += pz * out;
    if (pz > 0.0) inner += pz * von_neumann_entropy(DensityMatrix(hermitian_part(out)));
  }
  return von_neumann_entropy(DensityMatrix(hermitian_part(avg))) - inner;
}

// max over p min over q on a single fine grid, two letters and two states.
Real exhaustive_minimax(const AvCqc& w, std::size_t denominator) {
  Real best = -std::numeric_limits<Real>::infinity();
  for (std::size_t i = 0; i <= denominator; ++i) {
    ProbabilityVector p(2);
    p << Real(i) / denominator, 1.0 - Real(i) / denominator;
    Real worst = std::numeric_limits<Real>::infinity();
    for (std::size_t j = 0; j <= denominator; ++j) {
      ProbabilityVector q(2);
      q << Real(j) / denominator, 1.0 - Real(j) / denominator;
      worst = std::min(worst, chi_oracle(w, p, q));
    }
    best = std::max(best, worst);
  }
  return best;
}

}  // namespace

TEST_CASE("simplex grid enumeration") {
  const auto g = simplex_grid(3, 2);
  REQUIRE(g.size() == 6);
  CHECK(g.front()(0) == 0.0);
  CHECK(g.front()(2) == 1.0);
  CHECK(g.back()(0) == 1.0);
  for (const auto& p : g) CHECK(std::abs(p.sum() - 1.0) < 1e-15);
  CHECK(simplex_grid(1, 7).size() == 1);
  CHECK(simplex_grid_size(2, 64, 1000) == 65);
  CHECK(simplex_grid_size(4, 10, 1000) == 286);
  CHECK(simplex_grid_size(4, 10, 100) == 101);
  CHECK_THROWS_AS(simplex_grid(4, 10, 100), BudgetExceeded);
  CHECK_THROWS_AS(simplex_grid(0, 4), ValidationError);
}

TEST_CASE("chi of mixture") {
  ProbabilityVector half(2);
  half << 0.5, 0.5;
  ProbabilityVector keep(2);
  keep << 1.0, 0.0;
  const AvCqc w = swap_pair();
  CHECK(chi_of_mixture(w, half, half) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(chi_of_mixture(w, half, keep) == doctest::Approx(1.0));
  CHECK(std::abs(chi_of_mixture(w, half, keep) - holevo_chi(half, w.channel(0))) < 1e-12);

  Rng rng(60);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<CqChannel> chans;
    for (int s = 0; s < 3; ++s) chans.push_back(CqChannel({"a", "b", "c"}, {random_state(rng, 2), random_state(rng, 2, 1), random_state(rng, 2)}));
    const AvCqc r({"s0", "s1", "s2"}, chans);
    const ProbabilityVector p = random_distribution(rng, 3);
    const ProbabilityVector q = random_distribution(rng, 3);
    CHECK(std::abs(chi_of_mixture(r, p, q) - chi_oracle(r, p, q)) < 1e-10);
  }
}

TEST_CASE("capacity examples") {
  const AvCqc constant({"s"}, {CqChannel({"0", "1"}, {kZero, kZero})});
  const MinimaxResult c = cq_random_capacity(constant);
  CHECK(c.value <= 1e-6 + c.certified_gap);
  CHECK(c.grid_step == doctest::Approx(1.0 / 64));

  const AvCqc orth({"s"}, {CqChannel({"0", "1"}, {kZero, kOne})});
  const MinimaxResult o = cq_random_capacity(orth);
  CHECK(std::abs(o.value - 1.0) < 1e-4);
  CHECK(std::abs(o.argmax_p(0) - 0.5) < 1e-3);

  const MinimaxResult s = cq_random_capacity(swap_pair());
  CHECK(s.value <= 1e-6 + s.certified_gap);
  CHECK(s.value >= -1e-12);
  CHECK(std::abs(chi_of_mixture(swap_pair(), s.argmax_p, s.argmin_q) - s.value) < 1e-12);
}

TEST_CASE("single state without jammer equals the holevo quantity") {
  Rng rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    const CqChannel ch({"a", "b"}, {random_state(rng, 2), random_state(rng, 2)});
    const AvCqc w({"only"}, {ch});
    const MinimaxResult r = cq_random_capacity(w);
    CHECK(std::abs(r.value - holevo_chi(r.argmax_p, ch)) < 1e-12);
    CHECK(r.argmin_q.size() == 1);
    // A direct scan over p cannot beat the refined optimum by more than the gap.
    Real scan = 0.0;
    for (int i = 0; i <= 400; ++i) {
      ProbabilityVector p(2);
      p << i / 400.0, 1.0 - i / 400.0;
      scan = std::max(scan, holevo_chi(p, ch));
    }
    CHECK(r.value >= scan - 1e-6);
  }
}

TEST_CASE("mixing in only constant channels yields zero") {
  const AvCqc w({"a", "b"}, {CqChannel({"0", "1"}, {kZero, kZero}), CqChannel({"0", "1"}, {kOne, kOne})});
  const MinimaxResult r = cq_random_capacity(w);
  CHECK(std::abs(r.value) < 1e-9);
}

TEST_CASE("property: capacity matches an exhaustive fine grid") {
  Rng rng(62);
  std::vector<AvCqc> cases{swap_pair()};
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<CqChannel> chans;
    for (int s = 0; s < 2; ++s) chans.push_back(CqChannel({"0", "1"}, {random_state(rng, 2, 1), random_state(rng, 2)}));
    cases.emplace_back(std::vector<std::string>{"s0", "s1"}, chans);
  }
  for (const AvCqc& w : cases) {
    CapacityOptions opts;
    opts.grid_step = 1.0 / 32;
    const MinimaxResult r = cq_random_capacity(w, opts);
    const Real oracle = exhaustive_minimax(w, 200);
    CHECK(std::abs(r.value - oracle) <= r.certified_gap + 1e-3);
    CHECK(r.value >= -1e-12);
    CHECK(r.lipschitz_estimate >= 0.0);
    CHECK(std::abs(r.certified_gap - r.grid_step * r.lipschitz_estimate) < 1e-15);
    // The reported argmin is a best response to the reported argmax.
    CHECK(std::abs(chi_oracle(w, r.argmax_p, r.argmin_q) - r.value) < 1e-9);
  }
}

TEST_CASE("capacity options validation and budget") {
  CapacityOptions opts;
  opts.grid_step = 0.3;
  CHECK_THROWS_AS(cq_random_capacity(swap_pair(), opts), ValidationError);
  opts.grid_step = 0.0;
  CHECK_THROWS_AS(cq_random_capacity(swap_pair(), opts), ValidationError);
  opts.grid_step = 1.0 / 64;
  opts.evaluation_budget = 100;
  CHECK_THROWS_AS(cq_random_capacity(swap_pair(), opts), BudgetExceeded);
}

TEST_CASE("capacity is deterministic for a fixed seed") {
  CapacityOptions opts;
  opts.grid_step = 1.0 / 16;
  opts.seed = 9;
  const MinimaxResult a = cq_random_capacity(swap_pair(), opts);
  const MinimaxResult b = cq_random_capacity(swap_pair(), opts);
  CHECK(a.value == b.value);
  CHECK(a.lipschitz_estimate == b.lipschitz_estimate);
  CHECK(a.evaluations == b.evaluations);
}
