// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "prstl/error.hpp"
#include "prstl/random.hpp"

namespace prstl {

/// A trajectory simulator for adaptive multilevel splitting.
///
///   simulate(rng)               fresh trajectory
///   score(state)                importance score; the rare event is score >= target
///   branch(state, level, rng)   new trajectory conditioned on score > level,
///                               started from a surviving `state`
///
/// `branch_cost()` (optional) is the number of simulation steps a branch
/// consumes, for the budget report.
template <class M>
concept SplittingModel = requires(const M& m, const typename M::State& s, CounterRng& rng) {
  typename M::State;
  { m.simulate(rng) } -> std::convertible_to<typename M::State>;
  { m.score(s) } -> std::convertible_to<double>;
  { m.branch(s, 0.0, rng) } -> std::convertible_to<typename M::State>;
};

struct AmsConfig {
  double target = 0.0;
  std::size_t particles = 1000;
  double survivor_fraction = 0.5;
  std::uint64_t seed = 0;
  std::size_t max_levels = 1000;
};

struct AmsResult {
  double estimate;
  /// Intermediate levels, then the target for the final stage.
  std::vector<double> levels;
  std::size_t level_count;
  std::size_t particles;
  /// Fresh simulations plus branch steps.
  std::size_t simulations;
  /// True when the level cap stopped the run; `estimate` is then only the
  /// product up to the last level reached.
  bool capped;
};

/// Adaptive multilevel splitting: each stage places the next level at the
/// (1 - survivor_fraction) quantile of the current scores, keeps particles
/// strictly above it, and refills the population by branching random
/// survivors. The estimate is the product of per-stage survival fractions
/// times the final fraction reaching the target. Stage s, particle i draws
/// from substream (seed, s, i).
template <SplittingModel Model>
AmsResult run_ams(const Model& model, const AmsConfig& config) {
  if (config.particles < 10) throw SmcError("splitting needs at least 10 particles");
  if (!(config.survivor_fraction > 0.0 && config.survivor_fraction < 1.0)) {
    throw SmcError("survivor fraction must lie in (0, 1)");
  }
  if (config.max_levels == 0) throw SmcError("level cap must be at least 1");
  const std::size_t n = config.particles;
  std::size_t branch_cost = 1;
  if constexpr (requires { model.branch_cost(); }) branch_cost = model.branch_cost();

  std::vector<typename Model::State> particles;
  std::vector<double> scores;
  particles.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(config.seed, 0, i);
    particles.push_back(model.simulate(rng));
    scores.push_back(static_cast<double>(model.score(particles.back())));
  }

  AmsResult result{1.0, {}, 0, n, n, false};
  const auto quantile_index =
      static_cast<std::size_t>(std::ceil((1.0 - config.survivor_fraction) * static_cast<double>(n))) - 1;
  std::vector<double> sorted(n);
  std::vector<std::size_t> survivors;
  survivors.reserve(n);
  for (std::uint32_t stage = 1;; ++stage) {
    sorted = scores;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(quantile_index),
                     sorted.end());
    const double level = sorted[quantile_index];
    if (level >= config.target) {
      auto hits = std::count_if(scores.begin(), scores.end(),
                                [&](double s) { return s >= config.target; });
      result.estimate *= static_cast<double>(hits) / static_cast<double>(n);
      result.levels.push_back(config.target);
      result.level_count = result.levels.size();
      return result;
    }
    survivors.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (scores[i] > level) survivors.push_back(i);
    if (survivors.empty()) {
      throw SmcError("degenerate splitting level " + std::to_string(level) +
                     ": no particle scores above it");
    }
    result.estimate *= static_cast<double>(survivors.size()) / static_cast<double>(n);
    result.levels.push_back(level);
    if (result.levels.size() >= config.max_levels) {
      result.capped = true;
      result.level_count = result.levels.size();
      return result;
    }
    // Kill everything at or below the level; clone a random survivor into
    // each freed slot. Survivors are copied first so clones never start
    // from an already-replaced particle.
    std::vector<typename Model::State> parents;
    parents.reserve(survivors.size());
    for (std::size_t s : survivors) parents.push_back(particles[s]);
    for (std::size_t i = 0; i < n; ++i) {
      if (scores[i] > level) continue;
      CounterRng rng(config.seed, stage, i);
      std::uniform_int_distribution<std::size_t> pick(0, parents.size() - 1);
      particles[i] = model.branch(parents[pick(rng)], level, rng);
      scores[i] = static_cast<double>(model.score(particles[i]));
      result.simulations += branch_cost;
    }
  }
}

/// Standard normal draw scored by its value; branches run a Metropolis
/// chain (autoregressive proposal z' = c z + sqrt(1 - c^2) xi) restricted
/// to {z > level}, which leaves the conditional normal law invariant.
struct GaussianTailModel {
  using State = double;
  double correlation = 0.9;
  std::size_t steps = 10;

  double simulate(CounterRng& rng) const { return std::normal_distribution<double>()(rng); }
  double score(double z) const { return z; }
  double branch(double z, double level, CounterRng& rng) const {
    const double s = std::sqrt(1.0 - correlation * correlation);
    std::normal_distribution<double> xi;
    for (std::size_t k = 0; k < steps; ++k) {
      double proposal = correlation * z + s * xi(rng);
      if (proposal > level) z = proposal;
    }
    return z;
  }
  std::size_t branch_cost() const { return steps; }
};

}  // namespace prstl
