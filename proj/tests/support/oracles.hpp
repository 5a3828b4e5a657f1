// SPDX-License-Identifier: Apache-2.0
//
// Reference implementations used only by the tests. They follow the
// semantic definitions literally (nested loops over the sample grid) and
// share no code with the engine's evaluator.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "prstl/formula.hpp"
#include "prstl/monotonic_deque.hpp"
#include "prstl/signal.hpp"

namespace prstl::oracle {

/// min/max of {v_i : t_k - w <= t_i <= t_k} for every k, by rescanning.
std::vector<double> naive_window(std::span<const TimedValue> stream, double width,
                                 ExtremumMode mode);

/// Discrete-time robustness by direct recursion over the sample grid
/// `grid` (the formula's timeline). `index` selects the evaluation instant.
double robustness(const Formula& f, const Trace& x, std::span<const double> grid,
                  std::size_t index);

/// Boolean satisfaction by direct recursion; same windowing conventions.
bool satisfies(const Formula& f, const Trace& x, std::span<const double> grid, std::size_t index);

std::vector<double> robustness_all(const Formula& f, const Trace& x, std::span<const double> grid);
std::vector<bool> satisfies_all(const Formula& f, const Trace& x, std::span<const double> grid);

/// Exact binomial coverage of an interval procedure: sum of P(X = k) over the
/// k whose interval contains p.
template <class IntervalFn>
double exact_coverage(std::size_t n, double p, IntervalFn interval);

double binomial_pmf(std::size_t n, std::size_t k, double p);

template <class IntervalFn>
double exact_coverage(std::size_t n, double p, IntervalFn interval) {
  double total = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    auto [lo, hi] = interval(k, n);
    if (lo <= p && p <= hi) total += binomial_pmf(n, k, p);
  }
  return total;
}

}  // namespace prstl::oracle
