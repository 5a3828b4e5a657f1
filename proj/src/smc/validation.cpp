// SPDX-License-Identifier: Apache-2.0

#include "prstl/validation.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "prstl/error.hpp"
#include "prstl/random.hpp"

namespace prstl {

namespace {

double binomial_pmf(std::size_t n, std::size_t k, double p) {
  const double nn = static_cast<double>(n), kk = static_cast<double>(k);
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  return std::exp(std::lgamma(nn + 1) - std::lgamma(kk + 1) - std::lgamma(nn - kk + 1) +
                  kk * std::log(p) + (nn - kk) * std::log1p(-p));
}

}  // namespace

ChiSquared binomial_chi_squared(std::span<const std::size_t> histogram, std::size_t n, double p) {
  if (histogram.size() != n + 1) throw SmcError("histogram must have n + 1 bins");
  std::size_t total = 0;
  for (auto c : histogram) total += c;
  if (total == 0) throw SmcError("empty histogram");
  // Merge adjacent outcomes left to right until each bin expects >= 5; a
  // short remainder joins the previous bin.
  std::vector<double> expected, observed;
  double e = 0, o = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    e += static_cast<double>(total) * binomial_pmf(n, k, p);
    o += static_cast<double>(histogram[k]);
    if (e >= 5.0) {
      expected.push_back(e);
      observed.push_back(o);
      e = o = 0;
    }
  }
  if (e > 0 || o > 0) {
    if (expected.empty()) {
      expected.push_back(e);
      observed.push_back(o);
    } else {
      expected.back() += e;
      observed.back() += o;
    }
  }
  double stat = 0;
  for (std::size_t i = 0; i < expected.size(); ++i)
    stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  const std::size_t dof = expected.size() > 1 ? expected.size() - 1 : 0;
  const double pv = dof == 0 ? 1.0 : boost::math::gamma_q(static_cast<double>(dof) / 2.0, stat / 2.0);
  return {stat, dof, pv};
}

CoverageCell coverage_cell(double p, double confidence, std::size_t n, std::size_t trials,
                           IntervalMethod method, std::uint64_t seed, std::uint32_t cell) {
  if (!(p >= 0.0 && p <= 1.0)) throw SmcError("coverage p must lie in [0, 1]");
  if (n == 0 || trials == 0) throw SmcError("coverage needs n >= 1 and trials >= 1");
  SmcConfig config{n, confidence, method, seed};
  config.validate();
  std::vector<double> rho(n);
  std::vector<std::size_t> histogram(n + 1, 0);
  for (std::size_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, cell, t);
    // Success event u < p, expressed as a robustness margin.
    for (auto& r : rho) r = p - rng.uniform01();
    std::size_t k = 0;
    for (double r : rho) k += r > 0.0;
    ++histogram[k];
  }
  // The interval depends on the success count only.
  std::size_t covered = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    if (histogram[k] == 0) continue;
    ProbabilityEstimate est = estimate_from_counts(k, n, confidence, method);
    if (est.lower <= p && p <= est.upper) covered += histogram[k];
  }
  ChiSquared chi = binomial_chi_squared(histogram, n, p);
  return {p,
          confidence,
          n,
          trials,
          static_cast<double>(covered) / static_cast<double>(trials),
          chi.statistic,
          chi.degrees_of_freedom,
          chi.p_value};
}

std::vector<CoverageCell> coverage_grid(std::span<const double> ps,
                                        std::span<const double> confidences, std::size_t n,
                                        std::size_t trials, IntervalMethod method,
                                        std::uint64_t seed) {
  std::vector<CoverageCell> out;
  std::uint32_t cell = 0;
  for (double p : ps)
    for (double c : confidences) out.push_back(coverage_cell(p, c, n, trials, method, seed, cell++));
  return out;
}

SprtRates sprt_error_rates(const SprtConfig& config, std::size_t trials, std::uint64_t seed) {
  config.validate();
  if (trials == 0) throw SmcError("SPRT validation needs at least one trial");
  std::size_t wrong_h0 = 0, wrong_h1 = 0, samples_h0 = 0, samples_h1 = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    CounterRng under_h0(seed, 0, t), under_h1(seed, 1, t);
    auto v0 = run_sprt([&] { return under_h0.uniform01() < config.p0; }, config);
    auto v1 = run_sprt([&] { return under_h1.uniform01() < config.p1; }, config);
    wrong_h0 += v0.outcome == SprtOutcome::AcceptH1;
    wrong_h1 += v1.outcome == SprtOutcome::AcceptH0;
    samples_h0 += v0.samples;
    samples_h1 += v1.samples;
  }
  const double n = static_cast<double>(trials);
  return {static_cast<double>(wrong_h0) / n, static_cast<double>(wrong_h1) / n,
          static_cast<double>(samples_h0) / n, static_cast<double>(samples_h1) / n, trials};
}

ChernoffCheck chernoff_check(double p, double epsilon, double delta, std::size_t trials,
                             std::uint64_t seed) {
  const std::size_t n = required_samples(epsilon, delta);
  std::size_t exceed = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, 2, t);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) hits += rng.uniform01() < p;
    exceed += std::fabs(static_cast<double>(hits) / static_cast<double>(n) - p) > epsilon;
  }
  return {n, static_cast<double>(exceed) / static_cast<double>(trials)};
}

}  // namespace prstl
