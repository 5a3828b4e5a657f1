// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "prstl/error.hpp"
#include "prstl/signal.hpp"

namespace prstl {
namespace {

SignalError::Kind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const SignalError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected SignalError";
  return SignalError::Kind::Mismatch;
}

TEST(Trace, AppendAndOrdering) {
  Trace x;
  x.append("speed", 0.0, 42.0);
  x.append("speed", 0.1, 43.0);
  EXPECT_EQ(x.series("speed").size(), 2u);

  Trace y;
  y.append("speed", 0.1, 1.0);
  EXPECT_EQ(kind_of([&] { y.append("speed", 0.1, 2.0); }), SignalError::Kind::OutOfOrder);
  EXPECT_EQ(kind_of([&] { y.append("speed", 0.05, 2.0); }), SignalError::Kind::OutOfOrder);
  EXPECT_EQ(kind_of([&] { y.append("speed", 0.2, std::nan("")); }), SignalError::Kind::NonFinite);
  EXPECT_EQ(kind_of([&] { y.append("speed", std::numeric_limits<double>::infinity(), 1); }),
            SignalError::Kind::NonFinite);
  EXPECT_EQ(kind_of([&] { y.append("other", -1.0, 1.0); }), SignalError::Kind::NonFinite);
  // Variables are ordered independently.
  y.append("other", 0.0, 5.0);
  EXPECT_EQ(y.series("other").size(), 1u);
}

TEST(Trace, Horizon) {
  Trace x(TimeSemantics::Discrete, 1.0);
  x.append("v", 1.0, 0.0);
  EXPECT_EQ(kind_of([&] { x.append("v", 1.5, 0.0); }), SignalError::Kind::Horizon);
  EXPECT_THROW(Trace(TimeSemantics::Dense, -1.0), SignalError);
}

TEST(Trace, DenseInterpolation) {
  Trace x(TimeSemantics::Dense);
  x.append("v", 0, 0);
  x.append("v", 2, 4);
  EXPECT_EQ(x.value_at("v", 1), 2.0);
  EXPECT_EQ(x.value_at("v", 2), 4.0);
  EXPECT_EQ(kind_of([&] { x.value_at("v", 3); }), SignalError::Kind::OutOfRange);
  EXPECT_EQ(kind_of([&] { x.value_at("w", 1); }), SignalError::Kind::UnknownVariable);
}

TEST(Trace, DiscreteLookup) {
  Trace x(TimeSemantics::Discrete);
  x.append("v", 0, 0);
  x.append("v", 2, 4);
  EXPECT_EQ(x.value_at("v", 2), 4.0);
  EXPECT_EQ(kind_of([&] { x.value_at("v", 1); }), SignalError::Kind::NoSample);
}

TEST(Trace, InterpolationProperties) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> gap(1e-3, 2.0), val(-1e6, 1e6);
  Trace x(TimeSemantics::Dense);
  std::vector<std::pair<double, double>> samples;
  double t = 0;
  for (int i = 0; i < 2000; ++i) {
    double v = val(rng);
    x.append("v", t, v);
    samples.emplace_back(t, v);
    t += gap(rng);
  }
  for (auto [ts, v] : samples) ASSERT_EQ(x.value_at("v", ts), v);  // bit-exact
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    auto [t1, v1] = samples[i];
    auto [t2, v2] = samples[i + 1];
    double q = t1 + (t2 - t1) * std::uniform_real_distribution<double>(0, 1)(rng);
    double v = x.value_at("v", q);
    ASSERT_GE(v, std::min(v1, v2));
    ASSERT_LE(v, std::max(v1, v2));
  }
}

TEST(Trace, RetentionBound) {
  std::mt19937_64 rng(5);
  const double bound = 10.0;
  Trace x(TimeSemantics::Dense);
  x.set_retention(bound);
  double t = 0, min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20000; ++i) {
    x.append("v", t, 1.0);
    double g = std::uniform_real_distribution<double>(0.05, 0.5)(rng);
    min_gap = std::min(min_gap, g);
    t += g;
    const std::size_t limit = static_cast<std::size_t>(std::ceil(bound / min_gap)) + 2;
    ASSERT_LE(x.series("v").size(), limit);
  }
  // The oldest retained sample brackets latest - bound.
  const Series& s = x.series("v");
  EXPECT_LE(s.first_time(), s.last_time() - bound);
  EXPECT_NO_THROW(x.value_at("v", s.last_time() - bound));
}

TEST(Trace, Timeline) {
  Trace x;
  x.append("a", 0, 1);
  x.append("a", 2, 1);
  x.append("b", 1, 1);
  x.append("b", 2, 1);
  EXPECT_EQ(x.timeline(), (std::vector<double>{0, 1, 2}));
  std::vector<std::string> only_b{"b"};
  EXPECT_EQ(x.timeline(only_b), (std::vector<double>{1, 2}));
  EXPECT_EQ(x.retained_samples(), 4u);
}

TEST(TraceEnsemble, SharedShape) {
  Trace a, b, c;
  for (Trace* t : {&a, &b, &c}) t->append("v", 0, 1);
  b.append("v", 1, 1);
  EXPECT_THROW(TraceEnsemble({}), SignalError);
  EXPECT_THROW(TraceEnsemble({a, b}), SignalError);
  TraceEnsemble ok({a, c});
  EXPECT_EQ(ok.size(), 2u);
}

}  // namespace
}  // namespace prstl
