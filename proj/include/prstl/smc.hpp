// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "prstl/formula.hpp"

namespace prstl {

enum class IntervalMethod { Wilson, ClopperPearson };

std::string_view to_string(IntervalMethod method) noexcept;
/// Accepts "wilson" and "cp" / "clopper_pearson"; throws SmcError otherwise.
IntervalMethod interval_method_from_string(std::string_view name);

struct ConfidenceInterval {
  double lower;
  double upper;
};

/// Standard normal quantile Phi^-1(p) for p in (0, 1).
double normal_quantile(double p);

/// Wilson score interval with z = Phi^-1(1 - alpha/2), clamped to [0, 1].
/// The lower bound is exactly 0 for no successes and the upper bound
/// exactly 1 when every trial succeeds.
ConfidenceInterval wilson_interval(std::size_t successes, std::size_t trials, double confidence);

/// Exact (Clopper-Pearson) interval from beta quantiles.
ConfidenceInterval clopper_pearson_interval(std::size_t successes, std::size_t trials,
                                            double confidence);

/// Quantile of Beta(a, b) by bisection on the regularized incomplete beta
/// function, to 1e-10 in x.
double beta_quantile(double p, double a, double b);

/// ceil(ln(2/delta) / (2 eps^2)): samples guaranteeing |p_hat - p| <= eps
/// with probability at least 1 - delta.
std::size_t required_samples(double epsilon, double delta);

struct SmcConfig {
  std::size_t samples = 1000;
  double confidence = 0.95;
  IntervalMethod method = IntervalMethod::Wilson;
  std::uint64_t seed = 0;

  /// Throws SmcError unless samples >= 1 and confidence lies in (0, 1).
  void validate() const;
};

struct ProbabilityEstimate {
  double estimate;
  double lower;
  double upper;
  double confidence;
  std::size_t samples;
  std::size_t successes;
};

ProbabilityEstimate estimate_from_counts(std::size_t successes, std::size_t samples,
                                         double confidence, IntervalMethod method);

/// p_hat = #{rho_i > 0} / N; rho = 0 is not a success.
ProbabilityEstimate estimate_probability(std::span<const double> robustness, const SmcConfig& config);

enum class Verdict { Satisfied, Violated, Inconclusive };
std::string_view to_string(Verdict v) noexcept;

/// Three-valued comparison of the whole interval against `op threshold`.
Verdict judge(const ProbabilityEstimate& estimate, Comparison op, double threshold);

// ---------------------------------------------------------------------------
// Sequential probability ratio test

struct SprtConfig {
  double p0 = 0.3;
  double p1 = 0.5;
  double alpha = 0.05;
  double beta = 0.05;
  std::size_t max_samples = 1'000'000;

  /// Throws SmcError unless 0 < p0 < p1 < 1 and alpha, beta in (0, 0.5).
  void validate() const;
};

enum class SprtOutcome { AcceptH0, AcceptH1, Undecided };
std::string_view to_string(SprtOutcome o) noexcept;

struct SprtVerdict {
  SprtOutcome outcome;
  std::size_t samples;
  double log_ratio;
};

/// Wald's test on Bernoulli observations, one observation at a time.
class Sprt {
 public:
  explicit Sprt(const SprtConfig& config);

  /// Adds one observation; returns the decision once a boundary is crossed
  /// (Undecided while still sampling, or after max_samples).
  SprtOutcome observe(bool success);
  bool finished() const noexcept { return outcome_ != SprtOutcome::Undecided || n_ >= max_; }
  SprtVerdict verdict() const noexcept { return {outcome_, n_, lambda_}; }

 private:
  double step_success_, step_failure_, upper_, lower_;
  std::size_t max_;
  std::size_t n_ = 0;
  double lambda_ = 0.0;
  SprtOutcome outcome_ = SprtOutcome::Undecided;
};

/// Draws from `source()` (returning bool) until a decision or the cap.
template <class Source>
SprtVerdict run_sprt(Source&& source, const SprtConfig& config) {
  Sprt test(config);
  while (!test.finished()) test.observe(static_cast<bool>(source()));
  return test.verdict();
}

}  // namespace prstl
