// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "prstl/smc.hpp"

namespace prstl {

/// One (p, confidence) cell of the interval coverage experiment.
struct CoverageCell {
  double p;
  double confidence;
  std::size_t n;
  std::size_t trials;
  /// Fraction of trials whose interval contains p.
  double coverage;
  /// Chi-squared goodness of fit of the simulated success counts against
  /// Binomial(n, p).
  double chi_squared;
  std::size_t degrees_of_freedom;
  double p_value;
};

/// Runs `trials` estimates of n Bernoulli(p) draws, each success being a
/// strictly positive margin p - u. Intervals come from estimate_from_counts.
/// Trial t of cell `cell` draws from substream (seed, cell, t).
CoverageCell coverage_cell(double p, double confidence, std::size_t n, std::size_t trials,
                           IntervalMethod method, std::uint64_t seed, std::uint32_t cell);

std::vector<CoverageCell> coverage_grid(std::span<const double> ps,
                                        std::span<const double> confidences, std::size_t n,
                                        std::size_t trials, IntervalMethod method,
                                        std::uint64_t seed);

struct ChiSquared {
  double statistic;
  std::size_t degrees_of_freedom;
  double p_value;
};

/// Pearson chi-squared of observed counts of k = 0..n successes against
/// Binomial(n, p), merging adjacent outcomes until every bin expects >= 5.
ChiSquared binomial_chi_squared(std::span<const std::size_t> histogram, std::size_t n, double p);

struct SprtRates {
  double type_one;   // accept H1 when the truth is p0
  double type_two;   // accept H0 when the truth is p1
  double mean_samples_h0;
  double mean_samples_h1;
  std::size_t trials;
};

/// Empirical error rates of Wald's test with Bernoulli streams at the
/// boundary hypotheses p0 and p1.
SprtRates sprt_error_rates(const SprtConfig& config, std::size_t trials, std::uint64_t seed);

struct ChernoffCheck {
  std::size_t samples;
  double exceed_fraction;  // fraction of trials with |p_hat - p| > eps
};

ChernoffCheck chernoff_check(double p, double epsilon, double delta, std::size_t trials,
                             std::uint64_t seed);

}  // namespace prstl
