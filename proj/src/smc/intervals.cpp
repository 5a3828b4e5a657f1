// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "prstl/error.hpp"
#include "prstl/smc.hpp"

namespace prstl {

namespace {

void check_counts(std::size_t successes, std::size_t trials, double confidence) {
  if (trials == 0) throw SmcError("interval needs at least one trial");
  if (successes > trials) {
    throw SmcError("successes (" + std::to_string(successes) + ") exceed trials (" +
                   std::to_string(trials) + ")");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) throw SmcError("confidence must lie in (0, 1)");
}

}  // namespace

std::string_view to_string(IntervalMethod method) noexcept {
  return method == IntervalMethod::Wilson ? "wilson" : "clopper_pearson";
}

IntervalMethod interval_method_from_string(std::string_view name) {
  if (name == "wilson") return IntervalMethod::Wilson;
  if (name == "cp" || name == "clopper_pearson") return IntervalMethod::ClopperPearson;
  throw SmcError("unknown interval method '" + std::string(name) + "'");
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw SmcError("normal quantile needs p in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

ConfidenceInterval wilson_interval(std::size_t successes, std::size_t trials, double confidence) {
  check_counts(successes, trials, confidence);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z = normal_quantile(1.0 - (1.0 - confidence) / 2.0);
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  ConfidenceInterval ci{std::clamp(center - half, 0.0, 1.0), std::clamp(center + half, 0.0, 1.0)};
  if (successes == 0) ci.lower = 0.0;
  if (successes == trials) ci.upper = 1.0;
  return ci;
}

double beta_quantile(double p, double a, double b) {
  if (!(p >= 0.0 && p <= 1.0) || !(a > 0.0) || !(b > 0.0)) {
    throw SmcError("beta quantile needs p in [0, 1] and positive shapes");
  }
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    if (boost::math::ibeta(a, b, mid) < p) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

ConfidenceInterval clopper_pearson_interval(std::size_t successes, std::size_t trials,
                                            double confidence) {
  check_counts(successes, trials, confidence);
  const double alpha = 1.0 - confidence;
  const double x = static_cast<double>(successes), n = static_cast<double>(trials);
  ConfidenceInterval ci{0.0, 1.0};
  if (successes > 0) ci.lower = beta_quantile(alpha / 2.0, x, n - x + 1.0);
  if (successes < trials) ci.upper = beta_quantile(1.0 - alpha / 2.0, x + 1.0, n - x);
  return ci;
}

std::size_t required_samples(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw SmcError("epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw SmcError("delta must lie in (0, 1)");
  return static_cast<std::size_t>(std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
}

void SmcConfig::validate() const {
  if (samples == 0) throw SmcError("sample count must be at least 1");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw SmcError("confidence must lie in (0, 1), got " + format_number(confidence));
  }
}

ProbabilityEstimate estimate_from_counts(std::size_t successes, std::size_t samples,
                                         double confidence, IntervalMethod method) {
  ConfidenceInterval ci = method == IntervalMethod::Wilson
                              ? wilson_interval(successes, samples, confidence)
                              : clopper_pearson_interval(successes, samples, confidence);
  const double p = static_cast<double>(successes) / static_cast<double>(samples);
  // Guard the nesting invariant against last-ulp rounding in the bounds.
  return {p, std::min(ci.lower, p), std::max(ci.upper, p), confidence, samples, successes};
}

ProbabilityEstimate estimate_probability(std::span<const double> robustness, const SmcConfig& config) {
  if (robustness.empty()) throw SmcError("no robustness values to aggregate");
  SmcConfig c = config;
  c.samples = robustness.size();
  c.validate();
  std::size_t successes = 0;
  for (double r : robustness) successes += r > 0.0;
  return estimate_from_counts(successes, robustness.size(), config.confidence, config.method);
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict judge(const ProbabilityEstimate& e, Comparison op, double p) {
  switch (op) {
    case Comparison::GreaterEqual:
      if (e.lower >= p) return Verdict::Satisfied;
      if (e.upper < p) return Verdict::Violated;
      break;
    case Comparison::Greater:
      if (e.lower > p) return Verdict::Satisfied;
      if (e.upper <= p) return Verdict::Violated;
      break;
    case Comparison::LessEqual:
      if (e.upper <= p) return Verdict::Satisfied;
      if (e.lower > p) return Verdict::Violated;
      break;
    case Comparison::Less:
      if (e.upper < p) return Verdict::Satisfied;
      if (e.lower >= p) return Verdict::Violated;
      break;
    default: throw SmcError("probability comparisons must be <, <=, > or >=");
  }
  return Verdict::Inconclusive;
}

}  // namespace prstl
