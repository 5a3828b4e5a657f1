// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "prstl/error.hpp"
#include "prstl/noise.hpp"

namespace prstl {

namespace {

constexpr double kVarianceFloor = 1e-12;
constexpr double kMinWeight = 1e-6;
constexpr double kLog2Pi = 1.8378770664093453;

void check_residuals(std::span<const double> r) {
  if (r.size() < 2) throw NoiseError("fitting needs at least 2 residuals");
  for (double v : r)
    if (!std::isfinite(v)) throw NoiseError("residuals must be finite");
}

double mean_of(std::span<const double> r) {
  return std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
}

void require(bool ok, Family family, const char* domain) {
  if (!ok) {
    throw NoiseError("residuals outside the support of the " + std::string(to_string(family)) +
                     " family (" + domain + ")");
  }
}

// Shape k solving log k - digamma(k) = s (s > 0), from the Minka starting
// point with Newton steps.
double gamma_shape(double s) {
  double k = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
  for (int it = 0; it < 100; ++it) {
    double f = std::log(k) - boost::math::digamma(k) - s;
    double df = 1.0 / k - boost::math::trigamma(k);
    double next = k - f / df;
    if (!(next > 0.0)) next = k / 2.0;
    if (std::fabs(next - k) <= 1e-14 * k) return next;
    k = next;
  }
  return k;
}

std::array<double, 2> beta_mle(std::span<const double> r) {
  const double n = static_cast<double>(r.size());
  double g1 = 0, g2 = 0;
  for (double v : r) {
    g1 += std::log(v);
    g2 += std::log1p(-v);
  }
  g1 /= n;
  g2 /= n;
  const double m = mean_of(r);
  double var = 0;
  for (double v : r) var += (v - m) * (v - m);
  var /= n;
  if (!(var > 0.0)) throw NoiseError("beta fit is degenerate: residuals have no spread");
  double common = std::max(m * (1 - m) / var - 1.0, 1e-3);
  double a = m * common, b = (1 - m) * common;
  using boost::math::digamma;
  using boost::math::trigamma;
  for (int it = 0; it < 200; ++it) {
    double f1 = digamma(a) - digamma(a + b) - g1;
    double f2 = digamma(b) - digamma(a + b) - g2;
    double tab = trigamma(a + b);
    double j11 = trigamma(a) - tab, j12 = -tab, j22 = trigamma(b) - tab;
    double det = j11 * j22 - j12 * j12;
    double da = (f1 * j22 - f2 * j12) / det;
    double db = (j11 * f2 - j12 * f1) / det;
    double step = 1.0;
    while (a - step * da <= 0 || b - step * db <= 0) step /= 2;
    a -= step * da;
    b -= step * db;
    if (std::fabs(da) <= 1e-13 * a && std::fabs(db) <= 1e-13 * b) break;
  }
  return {a, b};
}

struct Mixture {
  std::vector<double> w, mu, var;
};

// E-step: fills responsibilities (n x k, row-major), returns log-likelihood.
double expectation(std::span<const double> r, const Mixture& m, std::vector<double>& resp) {
  const std::size_t k = m.w.size();
  std::vector<double> logp(k);
  double ll = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
      double d = r[i] - m.mu[j];
      logp[j] = std::log(m.w[j]) - 0.5 * (kLog2Pi + std::log(m.var[j]) + d * d / m.var[j]);
      top = std::max(top, logp[j]);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) sum += std::exp(logp[j] - top);
    double lse = top + std::log(sum);
    for (std::size_t j = 0; j < k; ++j) resp[i * k + j] = std::exp(logp[j] - lse);
    ll += lse;
  }
  return ll;
}

void maximization(std::span<const double> r, const std::vector<double>& resp, Mixture& m) {
  const std::size_t k = m.w.size();
  const double n = static_cast<double>(r.size());
  for (std::size_t j = 0; j < k; ++j) {
    double nk = 0, s = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      nk += resp[i * k + j];
      s += resp[i * k + j] * r[i];
    }
    double mu = s / nk;
    double ss = 0;
    for (std::size_t i = 0; i < r.size(); ++i) ss += resp[i * k + j] * (r[i] - mu) * (r[i] - mu);
    m.w[j] = nk / n;
    m.mu[j] = mu;
    m.var[j] = ss / nk;
    if (!(m.w[j] >= kMinWeight) || !(m.var[j] >= kVarianceFloor)) {
      throw NoiseError("EM produced a degenerate component " + std::to_string(j) + " (weight " +
                       std::to_string(m.w[j]) + ", variance " + std::to_string(m.var[j]) + ")");
    }
  }
}

}  // namespace

NoiseModel fit_parametric(std::span<const double> r, Family family, Interaction mode) {
  check_residuals(r);
  const double n = static_cast<double>(r.size());
  ParametricNoise m{family};
  switch (family) {
    case Family::Gaussian: {
      double mu = mean_of(r), ss = 0;
      for (double v : r) ss += (v - mu) * (v - mu);
      m.params = {mu, std::max(ss / (n - 1.0), kVarianceFloor)};
      break;
    }
    case Family::Lognormal: {
      require(std::all_of(r.begin(), r.end(), [](double v) { return v > 0; }), family, "r > 0");
      double mu = 0, ss = 0;
      for (double v : r) mu += std::log(v);
      mu /= n;
      for (double v : r) ss += (std::log(v) - mu) * (std::log(v) - mu);
      m.params = {mu, std::max(ss / n, kVarianceFloor)};
      break;
    }
    case Family::Exponential:
      require(std::all_of(r.begin(), r.end(), [](double v) { return v > 0; }), family, "r > 0");
      m.params = {1.0 / mean_of(r), 0.0};
      break;
    case Family::Gamma: {
      require(std::all_of(r.begin(), r.end(), [](double v) { return v > 0; }), family, "r > 0");
      double mu = mean_of(r), mlog = 0;
      for (double v : r) mlog += std::log(v);
      double s = std::log(mu) - mlog / n;
      if (!(s > 1e-14)) throw NoiseError("gamma fit is degenerate: residuals have no spread");
      double k = gamma_shape(s);
      m.params = {k, mu / k};
      break;
    }
    case Family::Beta:
      require(std::all_of(r.begin(), r.end(), [](double v) { return v > 0 && v < 1; }), family,
              "0 < r < 1");
      m.params = beta_mle(r);
      break;
    case Family::Uniform: {
      auto [lo, hi] = std::minmax_element(r.begin(), r.end());
      if (!(*lo < *hi)) throw NoiseError("uniform fit is degenerate: residuals have no spread");
      m.params = {*lo, *hi};
      break;
    }
  }
  return NoiseModel(m, mode);
}

NoiseModel fit_empirical(std::span<const double> r, Interaction mode) {
  check_residuals(r);
  return NoiseModel(EmpiricalNoise{{r.begin(), r.end()}}, mode);
}

NoiseModel fit_gmm(std::span<const double> r, Interaction mode, const GmmOptions& options) {
  check_residuals(r);
  const std::size_t k = options.components;
  if (k == 0) throw NoiseError("mixture needs at least one component");
  if (r.size() < 3 * k) {
    throw NoiseError("mixture with " + std::to_string(k) + " components needs at least " +
                     std::to_string(3 * k) + " residuals");
  }
  std::vector<double> sorted(r.begin(), r.end());
  std::sort(sorted.begin(), sorted.end());
  double overall_mean = mean_of(sorted), overall_var = 0;
  for (double v : sorted) overall_var += (v - overall_mean) * (v - overall_mean);
  overall_var /= static_cast<double>(sorted.size());

  Mixture m{std::vector<double>(k, 1.0 / static_cast<double>(k)), std::vector<double>(k),
            std::vector<double>(k)};
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t lo = j * sorted.size() / k, hi = (j + 1) * sorted.size() / k;
    std::span<const double> block(sorted.data() + lo, hi - lo);
    double mu = mean_of(block), ss = 0;
    for (double v : block) ss += (v - mu) * (v - mu);
    double var = ss / static_cast<double>(block.size());
    m.mu[j] = mu;
    m.var[j] = var >= kVarianceFloor ? var : overall_var;
    if (!(m.var[j] >= kVarianceFloor)) {
      throw NoiseError("EM initialization is degenerate: residuals have no spread");
    }
  }

  std::vector<double> resp(r.size() * k);
  MixtureNoise out;
  double ll = expectation(r, m, resp);
  out.log_likelihood.push_back(ll);
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    maximization(r, resp, m);
    double next = expectation(r, m, resp);
    out.log_likelihood.push_back(next);
    out.iterations = it + 1;
    bool done = next - ll < options.tolerance;
    ll = next;
    if (done) break;
  }
  double total = std::accumulate(m.w.begin(), m.w.end(), 0.0);
  for (double& w : m.w) w /= total;
  out.weights = std::move(m.w);
  out.means = std::move(m.mu);
  out.variances = std::move(m.var);
  return NoiseModel(std::move(out), mode);
}

}  // namespace prstl
