// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "prstl/error.hpp"
#include "prstl/robustness.hpp"

namespace prstl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Trace discrete(const char* name, std::initializer_list<double> values, double dt = 1.0) {
  Trace x(TimeSemantics::Discrete);
  double t = 0;
  for (double v : values) {
    x.append(name, t, v);
    t += dt;
  }
  return x;
}

std::vector<double> rhos(const std::vector<RobustnessSample>& s) {
  std::vector<double> out;
  for (const auto& r : s) out.push_back(r.rho);
  return out;
}

TEST(Robustness, PredicateAndNegation) {
  Trace x = discrete("x", {3});
  EXPECT_EQ(eval_robustness(parse_formula("x < 5"), x, 0), 2.0);
  EXPECT_EQ(eval_robustness(parse_formula("not(x < 5)"), x, 0), -2.0);
  EXPECT_EQ(eval_robustness(parse_formula("x >= 1"), x, 0), 2.0);
  EXPECT_EQ(eval_robustness(parse_formula("x == 5"), x, 0), -2.0);
  EXPECT_EQ(eval_robustness(parse_formula("x != 5"), x, 0), 2.0);
  EXPECT_EQ(eval_robustness(parse_formula("(x < 5) and (x > 4)"), x, 0), -1.0);
  EXPECT_EQ(eval_robustness(parse_formula("(x < 5) or (x > 4)"), x, 0), 2.0);
  EXPECT_EQ(eval_robustness(parse_formula("(x > 4) implies (x > 0)"), x, 0), 3.0);
}

TEST(Robustness, AlwaysOverWindow) {
  Trace v = discrete("v", {1, 3, 0.5, 2});
  EXPECT_EQ(eval_robustness(parse_formula("always[0,3](v > 0)"), v, 0), 0.5);
}

TEST(Robustness, EventuallyTruncatedAtHorizon) {
  Trace x = discrete("x", {8, 12, 9});
  auto out = eval_all(parse_formula("eventually[0,2](x > 10)"), x);
  EXPECT_EQ(rhos(out), (std::vector<double>{2, 2, -1}));
  EXPECT_FALSE(out[0].inconclusive);
  EXPECT_TRUE(out[1].inconclusive);
  EXPECT_TRUE(out[2].inconclusive);
}

TEST(Robustness, TopAndBottom) {
  Trace x = discrete("x", {1, 2, 3});
  for (const auto& s : eval_all(Formula::top(), x)) EXPECT_EQ(s.rho, kInf);
  for (const auto& s : eval_all(Formula::bottom(), x)) EXPECT_EQ(s.rho, -kInf);
}

TEST(Robustness, EmptyWindowsYieldIdentity) {
  Trace x = discrete("x", {1, 2, 3});
  auto g = eval_all(parse_formula("always[5,6](x > 0)"), x);
  auto f = eval_all(parse_formula("eventually[5,6](x > 0)"), x);
  for (auto& s : g) EXPECT_EQ(s.rho, kInf);
  for (auto& s : f) EXPECT_EQ(s.rho, -kInf);
  auto h = eval_all(parse_formula("historically[1,2](x > 0)"), x);
  EXPECT_EQ(h[0].rho, kInf);
  EXPECT_EQ(h[1].rho, 1.0);
  EXPECT_EQ(h[2].rho, 1.0);
}

TEST(Robustness, NextShiftsOneSample) {
  Trace x = discrete("x", {1, 2, 3});
  auto out = eval_all(parse_formula("next(x > 0)"), x);
  EXPECT_EQ(rhos(out), (std::vector<double>{2, 3, -kInf}));
  EXPECT_TRUE(out[2].inconclusive);
  EXPECT_FALSE(out[1].inconclusive);
}

TEST(Robustness, UntilAndSinceHandValues) {
  Trace x(TimeSemantics::Discrete);
  double p[] = {3, 2, 5, -1, 4};
  double q[] = {-2, 0, 1, 6, 2};
  for (int i = 0; i < 5; ++i) {
    x.append("p", i, p[i]);
    x.append("q", i, q[i]);
  }
  // s=1: min(0, min(3,2)) = 0; s=2: min(1, 2) = 1; s=3: min(6, -1) = -1.
  EXPECT_EQ(eval_robustness(parse_formula("(p > 0) until[1,3] (q > 0)"), x, 0), 1.0);
  // at t=4: s=3: min(6, min(-1,4)) = -1; s=2: min(1, -1) = -1.
  EXPECT_EQ(eval_robustness(parse_formula("(p > 0) since[1,2] (q > 0)"), x, 4), -1.0);
}

TEST(Robustness, MatchesBruteForceOracle) {
  std::mt19937_64 rng(2024);
  gen::FormulaOptions opt;
  opt.variables = {"x", "y"};
  opt.partial_functions = false;
  opt.integer_bounds = true;
  opt.max_bound = 4;
  for (int trial = 0; trial < 400; ++trial) {
    opt.max_depth = 1 + trial % 5;
    Formula f = gen::random_formula(rng, opt);
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
    Trace x = gen::random_trace(rng, opt.variables, n, trial % 2 == 0, trial % 3 != 0);
    auto grid = evaluation_grid(f, x);
    auto expected = oracle::robustness_all(f, x, grid);
    auto got = eval_all(f, x);
    ASSERT_EQ(got.size(), grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      ASSERT_EQ(got[i].time, grid[i]);
      ASSERT_EQ(got[i].rho, expected[i]) << format_formula(f) << " at t=" << grid[i];
      ASSERT_EQ(eval_robustness(f, x, grid[i]), got[i].rho) << format_formula(f);
    }
  }
}

TEST(Robustness, SignAgreesWithBooleanSemantics) {
  std::mt19937_64 rng(31337);
  gen::FormulaOptions opt;
  opt.variables = {"x", "y"};
  opt.equality = false;
  opt.partial_functions = false;
  opt.integer_bounds = true;
  opt.max_bound = 5;
  int decided = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Formula f = gen::random_formula(rng, opt);
    Trace x = gen::random_trace(rng, opt.variables, 20, true, false);
    auto grid = evaluation_grid(f, x);
    auto sat = oracle::satisfies_all(f, x, grid);
    auto got = eval_all(f, x);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (got[i].rho > 0) ASSERT_TRUE(sat[i]) << format_formula(f) << " t=" << grid[i];
      if (got[i].rho < 0) ASSERT_FALSE(sat[i]) << format_formula(f) << " t=" << grid[i];
      decided += got[i].rho != 0;
    }
  }
  EXPECT_GT(decided, 3000);
}

TEST(Robustness, Dualities) {
  std::mt19937_64 rng(8);
  gen::FormulaOptions opt;
  opt.variables = {"x"};
  opt.partial_functions = false;
  opt.max_depth = 4;
  for (int trial = 0; trial < 200; ++trial) {
    Formula f = gen::random_formula(rng, opt);
    Trace x = gen::random_trace(rng, opt.variables, 25, trial % 2 == 0, false);
    Interval iv(0, std::uniform_int_distribution<int>(0, 6)(rng));
    auto pos = eval_all(f, x);
    auto neg = eval_all(Formula::negation(f), x);
    auto g = eval_all(Formula::always(iv, f), x);
    auto dual = eval_all(Formula::eventually(iv, Formula::negation(f)), x);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      ASSERT_EQ(neg[i].rho, -pos[i].rho);
      ASSERT_EQ(g[i].rho, -dual[i].rho);
    }
  }
}

TEST(Robustness, DenseWindowsUseInterpolatedEndpoints) {
  Trace x(TimeSemantics::Dense);
  x.append("x", 0, 0);
  x.append("x", 2, 4);
  x.append("x", 4, 0);
  EXPECT_EQ(eval_robustness(parse_formula("always[0,1](x > 1)"), x, 0), -1.0);
  EXPECT_EQ(eval_robustness(parse_formula("eventually[0,1](x > 1)"), x, 0), 1.0);
  EXPECT_EQ(eval_robustness(parse_formula("eventually[0.5,1.5](x > 0)"), x, 0.25), 3.5);
  EXPECT_EQ(eval_robustness(parse_formula("eventually[0,1](x > 0)"), x, 1.5), 4.0);
  EXPECT_THROW(eval_robustness(parse_formula("x > 0"), x, 5), SignalError);
}

// For predicates affine in one variable, the sup over a window of a
// piecewise-linear signal is attained at a breakpoint or endpoint, so the
// breakpoint grid is exact; a fine uniform scan approaches it from below.
TEST(Robustness, DenseMatchesFineScan) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    Trace x(TimeSemantics::Dense);
    double t = 0;
    for (int i = 0; i < 15; ++i) {
      x.append("x", t, std::uniform_real_distribution<double>(-3, 3)(rng));
      t += std::uniform_real_distribution<double>(0.3, 1.5)(rng);
    }
    double a = std::uniform_real_distribution<double>(0, 2)(rng);
    double b = a + std::uniform_real_distribution<double>(0.1, 3)(rng);
    double q = std::uniform_real_distribution<double>(0, 2)(rng);
    Formula f = Formula::eventually(Interval(a, b), parse_formula("2 * x - 1 > 0"));
    double engine = eval_robustness(f, x, q);
    double last = x.series("x").last_time();
    double scan = -kInf;
    for (double s = q + a; s <= std::min(q + b, last); s += 1e-4)
      scan = std::max(scan, 2 * x.value_at("x", s) - 1);
    if (q + b <= last) scan = std::max(scan, 2 * x.value_at("x", q + b) - 1);
    ASSERT_GE(engine, scan - 1e-12);
    ASSERT_LE(engine - scan, 2 * 6 / 0.3 * 1e-4 + 1e-9);
  }
}

TEST(Robustness, Errors) {
  Trace x = discrete("x", {1, 2, 3});
  EXPECT_THROW(eval_robustness(parse_formula("P>0.5(x > 0)"), x, 0), RobustnessError);
  EXPECT_THROW(eval_all(parse_formula("always[0,1](P>0.5(x > 0))"), x), RobustnessError);
  EXPECT_THROW(eval_robustness(parse_formula("y > 0"), x, 0), SignalError);
  EXPECT_THROW(eval_robustness(parse_formula("x > 0"), x, 0.5), SignalError);

  RobustnessOptions strict{HorizonPolicy::Strict};
  Formula f = parse_formula("eventually[0,1](x > 0)");
  EXPECT_NO_THROW(eval_robustness(f, x, 1, strict));
  EXPECT_THROW(eval_robustness(f, x, 2, strict), RobustnessError);
  EXPECT_EQ(eval_all(f, x, strict).size(), 2u);
}

TEST(Robustness, DequeMemoryIsBoundedByWindows) {
  Trace x(TimeSemantics::Discrete);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 5000; ++i) x.append("x", i, std::uniform_real_distribution<double>(0, 1)(rng));
  for (double b : {10.0, 50.0, 200.0}) {
    Formula f = Formula::always(Interval(0, b), Formula::eventually(Interval(0, b / 2),
                                                                     parse_formula("x > 0.5")));
    EvalStats stats;
    eval_all(f, x, {}, &stats);
    EXPECT_EQ(stats.window_passes, 2u);
    // Window of width b on unit spacing holds b + 1 samples.
    EXPECT_LE(stats.peak_deque_entries, static_cast<std::size_t>(b + 1 + b / 2 + 1) + 2);
  }
}

TEST(Dense, MultiVariableGridIsCommonRange) {
  Trace x(TimeSemantics::Dense);
  x.append("x", 0, 1);
  x.append("y", 0.5, 2);
  x.append("x", 1, 3);
  x.append("y", 1, 1);
  auto f = parse_formula("x < y");
  EXPECT_EQ(evaluation_grid(f, x), (std::vector<double>{0.5, 1.0}));
  auto all = eval_all(f, x);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_NEAR(all[0].rho, 0.0, 1e-15);
  EXPECT_EQ(all[1].rho, -2.0);

  Trace apart(TimeSemantics::Dense);
  apart.append("x", 0, 1);
  apart.append("x", 1, 1);
  apart.append("y", 2, 1);
  EXPECT_THROW(evaluation_grid(f, apart), SignalError);
}

}  // namespace
}  // namespace prstl
