// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "prstl/error.hpp"
#include "prstl/splitting.hpp"

namespace prstl {
namespace {

double normal_tail(double c) { return 0.5 * std::erfc(c / std::sqrt(2.0)); }

TEST(Ams, GaussianTailWithinFactorTwo) {
  GaussianTailModel model;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto r = run_ams(model, AmsConfig{4.0, 1000, 0.5, seed, 1000});
    const double truth = normal_tail(4.0);
    EXPECT_GT(r.estimate, truth / 2) << seed;
    EXPECT_LT(r.estimate, truth * 2) << seed;
    EXPECT_FALSE(r.capped);
    EXPECT_EQ(r.levels.back(), 4.0);
    EXPECT_EQ(r.level_count, r.levels.size());
    for (std::size_t i = 1; i < r.levels.size(); ++i) EXPECT_GT(r.levels[i], r.levels[i - 1]);
    // Crude Monte Carlo would need about 1 / truth ~ 30k runs for one hit.
    EXPECT_LT(r.simulations, 200000u);
  }
}

TEST(Ams, EasyTargetEndsInFirstStage) {
  GaussianTailModel model;
  auto r = run_ams(model, AmsConfig{-10.0, 200, 0.5, 4, 1000});
  EXPECT_EQ(r.estimate, 1.0);
  EXPECT_EQ(r.levels.size(), 1u);
  EXPECT_EQ(r.simulations, 200u);
}

TEST(Ams, MedianTarget) {
  GaussianTailModel model;
  double sum = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) sum += run_ams(model, {0.0, 1000, 0.5, seed}).estimate;
  EXPECT_NEAR(sum / 20, 0.5, 0.03);
}

struct Plateau {
  using State = double;
  double simulate(CounterRng&) const { return 1.0; }
  double score(double s) const { return s; }
  double branch(double s, double, CounterRng&) const { return s; }
};

TEST(Ams, UnreachableTargetIsDegenerate) {
  EXPECT_THROW(run_ams(Plateau{}, AmsConfig{2.0, 100, 0.5, 0}), SmcError);
}

TEST(Ams, DeterministicAndCapped) {
  GaussianTailModel model;
  AmsConfig cfg{3.0, 300, 0.5, 77};
  auto a = run_ams(model, cfg), b = run_ams(model, cfg);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.levels, b.levels);
  cfg.max_levels = 2;
  auto capped = run_ams(model, cfg);
  EXPECT_TRUE(capped.capped);
  EXPECT_EQ(capped.levels.size(), 2u);
}

TEST(Ams, ConfigErrors) {
  GaussianTailModel model;
  EXPECT_THROW(run_ams(model, AmsConfig{1.0, 5, 0.5, 0}), SmcError);
  EXPECT_THROW(run_ams(model, AmsConfig{1.0, 100, 1.0, 0}), SmcError);
  EXPECT_THROW(run_ams(model, AmsConfig{1.0, 100, 0.5, 0, 0}), SmcError);
}

}  // namespace
}  // namespace prstl
