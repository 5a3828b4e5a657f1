// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "prstl/random.hpp"

namespace prstl {

/// How a sensor reading y relates to the true value x and residual r:
/// additive y = x + r, multiplicative y = x * r.
enum class Interaction { Additive, Multiplicative };

enum class Family { Gaussian, Lognormal, Exponential, Gamma, Beta, Uniform };

std::string_view to_string(Interaction mode) noexcept;
std::string_view to_string(Family family) noexcept;
/// Inverse of to_string; throws NoiseError for unknown names.
Interaction interaction_from_string(std::string_view name);
Family family_from_string(std::string_view name);

/// Parameter names in storage order:
///   gaussian (mean, variance), lognormal (mu, sigma2) of log r,
///   exponential (rate, -), gamma (shape, scale), beta (alpha, beta),
///   uniform (lower, upper).
std::array<std::string_view, 2> parameter_names(Family family) noexcept;
std::size_t parameter_count(Family family) noexcept;

struct ParametricNoise {
  Family family;
  std::array<double, 2> params{};
};

struct EmpiricalNoise {
  std::vector<double> residuals;
};

struct MixtureNoise {
  std::vector<double> weights;
  std::vector<double> means;
  std::vector<double> variances;
  /// Log-likelihood after every EM iteration (empty for loaded models).
  std::vector<double> log_likelihood;
  std::size_t iterations = 0;
};

/// Fitted residual distribution plus the interaction used to invert it.
/// Immutable after construction; the constructor validates parameters.
class NoiseModel {
 public:
  using Variant = std::variant<ParametricNoise, EmpiricalNoise, MixtureNoise>;

  NoiseModel(Variant model, Interaction interaction);

  const Variant& model() const noexcept { return model_; }
  Interaction interaction() const noexcept { return interaction_; }

  /// One residual draw.
  double draw_residual(CounterRng& rng) const;
  /// One candidate true value for reading `q`: q - r or q / r.
  /// Throws NoiseError on a zero residual under multiplicative inversion.
  double lift(double q, CounterRng& rng) const;

 private:
  Variant model_;
  Interaction interaction_;
};

/// r_i = y_i - x_i (additive) or y_i / x_i (multiplicative).
std::vector<double> compute_residuals(std::span<const double> truth, std::span<const double> sensed,
                                      Interaction mode);

struct GmmOptions {
  std::size_t components = 2;
  double tolerance = 1e-8;
  std::size_t max_iterations = 500;
};

/// Maximum-likelihood fit of a parametric family. Gaussian variance uses
/// the n-1 divisor with a 1e-12 floor.
NoiseModel fit_parametric(std::span<const double> residuals, Family family, Interaction mode);
/// Stores the residuals for bootstrap resampling.
NoiseModel fit_empirical(std::span<const double> residuals, Interaction mode);
/// One-dimensional Gaussian mixture by expectation-maximization, started
/// from k contiguous blocks of the sorted residuals with equal weights.
NoiseModel fit_gmm(std::span<const double> residuals, Interaction mode, const GmmOptions& options = {});

/// N candidate true values for reading `q`. Draw i uses the substream
/// (seed, stream i, substream `reading`), so any prefix or partition of the
/// ensemble reproduces the same values.
std::vector<double> sample_trajectories(const NoiseModel& model, double q, std::size_t count,
                                        std::uint64_t seed, std::uint64_t reading = 0);

/// JSON form: {"schema_version", "variant", "interaction", ...}.
std::string to_json(const NoiseModel& model);
NoiseModel noise_model_from_json(std::string_view text);

}  // namespace prstl
