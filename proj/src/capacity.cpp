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

#include "avqclab/capacity.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "avqclab/info.hpp"
#include "avqclab/parallel.hpp"
#include "avqclab/random.hpp"

namespace avqc {

namespace {

// Caches the per-state matrices so a chi evaluation costs one weighted sum
// and one or |Z|+1 Hermitian eigensolves.
class MixtureEvaluator {
 public:
  explicit MixtureEvaluator(const AvCqc& w) : states_(w.size()), letters_(w.alphabet_size()), dim_(w.dim()) {
    for (std::size_t s = 0; s < states_; ++s) {
      for (std::size_t z = 0; z < letters_; ++z) outputs_.push_back(w.channel(s).output(z).matrix());
    }
  }

  std::size_t states() const { return states_; }
  std::size_t letters() const { return letters_; }

  /// S(W_q(z)) for every letter z.
  RealVector output_entropies(const ProbabilityVector& q) const {
    RealVector out(letters_);
    for (std::size_t z = 0; z < letters_; ++z) out(z) = von_neumann_entropy_unchecked(mixed_output(q, z));
    return out;
  }

  /// sum_z p(z) W_s(z) for every state s.
  std::vector<ComplexMatrix> input_averages(const ProbabilityVector& p) const {
    std::vector<ComplexMatrix> out(states_, ComplexMatrix::Zero(dim_, dim_));
    for (std::size_t s = 0; s < states_; ++s) {
      for (std::size_t z = 0; z < letters_; ++z) {
        if (p(z) != 0.0) out[s] += p(z) * at(s, z);
      }
    }
    return out;
  }

  Real chi(const ProbabilityVector& p, const std::vector<ComplexMatrix>& averages, const ProbabilityVector& q,
           const RealVector& entropies) const {
    ComplexMatrix avg = ComplexMatrix::Zero(dim_, dim_);
    for (std::size_t s = 0; s < states_; ++s) {
      if (q(s) != 0.0) avg += q(s) * averages[s];
    }
    return std::max<Real>(0.0, von_neumann_entropy_unchecked(avg) - p.dot(entropies));
  }

  Real chi(const ProbabilityVector& p, const ProbabilityVector& q) const {
    return chi(p, input_averages(p), q, output_entropies(q));
  }

 private:
  const ComplexMatrix& at(std::size_t s, std::size_t z) const { return outputs_[s * letters_ + z]; }

  ComplexMatrix mixed_output(const ProbabilityVector& q, std::size_t z) const {
    ComplexMatrix m = ComplexMatrix::Zero(dim_, dim_);
    for (std::size_t s = 0; s < states_; ++s) {
      if (q(s) != 0.0) m += q(s) * at(s, z);
    }
    return m;
  }

  std::size_t states_;
  std::size_t letters_;
  Eigen::Index dim_;
  std::vector<ComplexMatrix> outputs_;
};

// Pairwise mass-transfer search on the simplex. `sign` = +1 maximizes,
// -1 minimizes. Each iteration sweeps all ordered pairs at step delta and
// then halves delta. Returns the number of objective evaluations.
std::size_t refine(ProbabilityVector& x, Real& value, Real delta, std::size_t iterations, Real sign,
                   const std::function<Real(const ProbabilityVector&)>& objective) {
  std::size_t evals = 0;
  const Eigen::Index n = x.size();
  if (n < 2) return 0;
  for (std::size_t it = 0; it < iterations; ++it) {
    for (Eigen::Index from = 0; from < n; ++from) {
      for (Eigen::Index to = 0; to < n; ++to) {
        if (from == to) continue;
        const Real step = std::min(delta, x(from));
        if (step <= 0.0) continue;
        ProbabilityVector y = x;
        y(from) -= step;
        y(to) += step;
        const Real v = objective(y);
        ++evals;
        if (sign * (v - value) > 1e-15) {
          x = std::move(y);
          value = v;
        }
      }
    }
    delta /= 2.0;
  }
  return evals;
}

ProbabilityVector random_simplex_point(Rng& rng, std::size_t dim) {
  ProbabilityVector p(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Real u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    p(i) = -std::log(u);
  }
  return p / p.sum();
}

void fill_grid(std::vector<ProbabilityVector>& out, ProbabilityVector& current, std::size_t pos, std::size_t left,
               std::size_t denominator) {
  const std::size_t dim = static_cast<std::size_t>(current.size());
  if (pos + 1 == dim) {
    current(pos) = Real(left) / Real(denominator);
    out.push_back(current);
    return;
  }
  for (std::size_t k = 0; k <= left; ++k) {
    current(pos) = Real(k) / Real(denominator);
    fill_grid(out, current, pos + 1, left - k, denominator);
  }
}

}  // namespace

std::size_t simplex_grid_size(std::size_t dim, std::size_t denominator, std::size_t cap) {
  // C(denominator + dim - 1, dim - 1) by the multiplicative formula.
  std::size_t c = 1;
  for (std::size_t k = 1; k < dim; ++k) {
    c = c * (denominator + k) / k;
    if (c > cap) return cap + 1;
  }
  return c;
}

std::vector<ProbabilityVector> simplex_grid(std::size_t dim, std::size_t denominator, std::size_t budget) {
  if (dim == 0 || denominator == 0) throw ValidationError("simplex_grid: dimension and denominator must be positive");
  if (simplex_grid_size(dim, denominator, budget) > budget) {
    throw BudgetExceeded("simplex_grid: grid has more than " + std::to_string(budget) + " points");
  }
  std::vector<ProbabilityVector> out;
  ProbabilityVector current = ProbabilityVector::Zero(static_cast<Eigen::Index>(dim));
  fill_grid(out, current, 0, denominator, denominator);
  return out;
}

Real chi_of_mixture(const AvCqc& avcqc, const ProbabilityVector& p, const ProbabilityVector& q) {
  validate_probability_vector(p, static_cast<Eigen::Index>(avcqc.alphabet_size()), "chi_of_mixture: p");
  validate_probability_vector(q, static_cast<Eigen::Index>(avcqc.size()), "chi_of_mixture: q");
  return MixtureEvaluator(avcqc).chi(p, q);
}

MinimaxResult cq_random_capacity(const AvCqc& avcqc, const CapacityOptions& opts) {
  if (!(opts.grid_step > 0.0 && opts.grid_step <= 1.0)) {
    throw ValidationError("cq_random_capacity: grid step must lie in (0, 1]");
  }
  const std::size_t denominator = static_cast<std::size_t>(std::llround(1.0 / opts.grid_step));
  if (denominator == 0 || std::abs(1.0 / Real(denominator) - opts.grid_step) > 1e-9) {
    throw ValidationError("cq_random_capacity: grid step must be 1/N for an integer N");
  }
  const MixtureEvaluator eval(avcqc);
  const std::size_t z = eval.letters();
  const std::size_t s = eval.states();
  const std::size_t budget = opts.evaluation_budget;

  const std::size_t np = simplex_grid_size(z, denominator, budget);
  const std::size_t nq = simplex_grid_size(s, denominator, budget);
  // A warm-started inner search may have to travel across the whole simplex,
  // so it starts at step 1/2 and halves down to the same final resolution.
  std::size_t warm_extra = 0;
  while ((std::size_t{2} << warm_extra) < denominator) ++warm_extra;
  const std::size_t inner_refine = opts.refine_iterations * s * (s - 1);
  const std::size_t warm_refine = (opts.refine_iterations + warm_extra) * s * (s - 1);
  const std::size_t outer_refine = opts.refine_iterations * z * (z - 1) * (warm_refine + 1);
  if (np > budget || nq > budget || np > budget / nq ||
      np * (nq + inner_refine) + outer_refine + opts.lipschitz_samples * 2 > budget) {
    throw BudgetExceeded("cq_random_capacity: nested grids at step 1/" + std::to_string(denominator) +
                         " exceed the evaluation budget of " + std::to_string(budget));
  }
  const std::vector<ProbabilityVector> p_grid = simplex_grid(z, denominator, budget);
  const std::vector<ProbabilityVector> q_grid = simplex_grid(s, denominator, budget);

  std::vector<RealVector> q_entropies(q_grid.size());
  parallel_for(q_grid.size(), [&](std::size_t qi) { q_entropies[qi] = eval.output_entropies(q_grid[qi]); });

  struct Inner {
    Real value;
    ProbabilityVector q;
    std::size_t evals;
  };
  // Inner minimum at p, on the grid (if requested) and then refined from `start`.
  auto inner_min = [&](const ProbabilityVector& p, const ProbabilityVector* start) {
    const std::vector<ComplexMatrix> averages = eval.input_averages(p);
    Inner out{0.0, ProbabilityVector(), 0};
    if (start == nullptr) {
      std::size_t best = 0;
      Real best_value = std::numeric_limits<Real>::infinity();
      for (std::size_t qi = 0; qi < q_grid.size(); ++qi) {
        const Real v = eval.chi(p, averages, q_grid[qi], q_entropies[qi]);
        if (v < best_value - 1e-15) {
          best_value = v;
          best = qi;
        }
      }
      out.value = best_value;
      out.q = q_grid[best];
      out.evals = q_grid.size();
    } else {
      out.q = *start;
      out.value = eval.chi(p, averages, out.q, eval.output_entropies(out.q));
      out.evals = 1;
    }
    const bool warm = start != nullptr;
    out.evals += refine(out.q, out.value, warm ? 0.5 : opts.grid_step,
                        opts.refine_iterations + (warm ? warm_extra : 0), -1.0,
                        [&](const ProbabilityVector& q) {
                          return eval.chi(p, averages, q, eval.output_entropies(q));
                        });
    return out;
  };

  std::vector<Inner> per_p(p_grid.size());
  parallel_for(p_grid.size(), [&](std::size_t pi) { per_p[pi] = inner_min(p_grid[pi], nullptr); });

  MinimaxResult result;
  result.grid_step = opts.grid_step;
  std::size_t best = 0;
  for (std::size_t pi = 0; pi < per_p.size(); ++pi) {
    result.evaluations += per_p[pi].evals;
    if (per_p[pi].value > per_p[best].value + 1e-15) best = pi;
  }

  ProbabilityVector p = p_grid[best];
  ProbabilityVector q = per_p[best].q;
  Real value = per_p[best].value;
  // Accepted moves carry their inner minimizer forward as the next warm start;
  // `accepted` mirrors the acceptance rule inside refine().
  Real accepted = value;
  result.evaluations += refine(p, value, opts.grid_step, opts.refine_iterations, 1.0,
                               [&](const ProbabilityVector& cand) {
                                 const Inner inner = inner_min(cand, &q);
                                 result.evaluations += inner.evals;
                                 if (inner.value - accepted > 1e-15) {
                                   accepted = inner.value;
                                   q = inner.q;
                                 }
                                 return inner.value;
                               });
  const Inner final_inner = inner_min(p, &q);
  result.evaluations += final_inner.evals;
  result.value = std::min(value, final_inner.value);
  result.argmax_p = p;
  result.argmin_q = final_inner.value <= value ? final_inner.q : q;

  // Largest change of chi per unit sup-norm displacement at the grid scale.
  Rng rng(opts.seed);
  Real lipschitz = 0.0;
  for (std::size_t k = 0; k < opts.lipschitz_samples; ++k) {
    Rng local = rng.split(k);
    const ProbabilityVector p0 = random_simplex_point(local, z);
    const ProbabilityVector q0 = random_simplex_point(local, s);
    const ProbabilityVector p1 = random_simplex_point(local, z);
    const ProbabilityVector q1 = random_simplex_point(local, s);
    const Real span = std::max((p1 - p0).cwiseAbs().maxCoeff(), (q1 - q0).cwiseAbs().maxCoeff());
    if (span <= 0.0) continue;
    const Real t = std::min<Real>(1.0, opts.grid_step / span);
    const ProbabilityVector pt = p0 + t * (p1 - p0);
    const ProbabilityVector qt = q0 + t * (q1 - q0);
    const Real diff = std::abs(eval.chi(pt, qt) - eval.chi(p0, q0));
    lipschitz = std::max(lipschitz, diff / (t * span));
    result.evaluations += 2;
  }
  result.lipschitz_estimate = lipschitz;
  result.certified_gap = opts.grid_step * lipschitz;
  return result;
}

}  // namespace avqc
