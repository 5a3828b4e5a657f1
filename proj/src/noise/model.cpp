// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <json.hpp>

#include "prstl/detail/overloaded.hpp"
#include "prstl/error.hpp"
#include "prstl/noise.hpp"

namespace prstl {

using detail::overloaded;

namespace {

constexpr int kSchemaVersion = 1;

constexpr std::array<std::pair<std::string_view, Family>, 6> kFamilies{{
    {"gaussian", Family::Gaussian},
    {"lognormal", Family::Lognormal},
    {"exponential", Family::Exponential},
    {"gamma", Family::Gamma},
    {"beta", Family::Beta},
    {"uniform", Family::Uniform},
}};

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

void validate(const ParametricNoise& m) {
  const auto [a, b] = m.params;
  bool ok = false;
  switch (m.family) {
    case Family::Gaussian:
    case Family::Lognormal: ok = std::isfinite(a) && finite_positive(b); break;
    case Family::Exponential: ok = finite_positive(a); break;
    case Family::Gamma:
    case Family::Beta: ok = finite_positive(a) && finite_positive(b); break;
    case Family::Uniform: ok = std::isfinite(a) && std::isfinite(b) && a < b; break;
  }
  if (!ok) {
    throw NoiseError("parameters out of domain for the " + std::string(to_string(m.family)) +
                     " family");
  }
}

void validate(const EmpiricalNoise& m) {
  if (m.residuals.empty()) throw NoiseError("empirical noise model has no residuals");
  for (double r : m.residuals)
    if (!std::isfinite(r)) throw NoiseError("empirical noise model has a non-finite residual");
}

void validate(const MixtureNoise& m) {
  const std::size_t k = m.weights.size();
  if (k == 0 || m.means.size() != k || m.variances.size() != k) {
    throw NoiseError("mixture needs matching, non-empty weights, means and variances");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    if (!finite_positive(m.weights[j])) throw NoiseError("mixture weights must be positive");
    if (!std::isfinite(m.means[j])) throw NoiseError("mixture means must be finite");
    if (!finite_positive(m.variances[j])) throw NoiseError("mixture variances must be positive");
    total += m.weights[j];
  }
  if (std::fabs(total - 1.0) > 1e-9) throw NoiseError("mixture weights must sum to 1");
}

}  // namespace

std::string_view to_string(Interaction mode) noexcept {
  return mode == Interaction::Additive ? "additive" : "multiplicative";
}

std::string_view to_string(Family family) noexcept {
  for (const auto& [name, f] : kFamilies)
    if (f == family) return name;
  return "?";
}

Interaction interaction_from_string(std::string_view name) {
  if (name == "additive") return Interaction::Additive;
  if (name == "multiplicative") return Interaction::Multiplicative;
  throw NoiseError("unknown interaction mode '" + std::string(name) + "'");
}

Family family_from_string(std::string_view name) {
  for (const auto& [n, f] : kFamilies)
    if (n == name) return f;
  throw NoiseError("unknown noise family '" + std::string(name) + "'");
}

std::array<std::string_view, 2> parameter_names(Family family) noexcept {
  switch (family) {
    case Family::Gaussian: return {"mean", "variance"};
    case Family::Lognormal: return {"mu", "sigma2"};
    case Family::Exponential: return {"rate", ""};
    case Family::Gamma: return {"shape", "scale"};
    case Family::Beta: return {"alpha", "beta"};
    case Family::Uniform: return {"lower", "upper"};
  }
  return {"", ""};
}

std::size_t parameter_count(Family family) noexcept {
  return family == Family::Exponential ? 1 : 2;
}

NoiseModel::NoiseModel(Variant model, Interaction interaction)
    : model_(std::move(model)), interaction_(interaction) {
  std::visit([](const auto& m) { validate(m); }, model_);
}

double NoiseModel::draw_residual(CounterRng& rng) const {
  return std::visit(
      overloaded{
          [&](const ParametricNoise& m) -> double {
            const auto [a, b] = m.params;
            switch (m.family) {
              case Family::Gaussian: return std::normal_distribution<double>(a, std::sqrt(b))(rng);
              case Family::Lognormal:
                return std::lognormal_distribution<double>(a, std::sqrt(b))(rng);
              case Family::Exponential: return std::exponential_distribution<double>(a)(rng);
              case Family::Gamma: return std::gamma_distribution<double>(a, b)(rng);
              case Family::Beta: {
                double x = std::gamma_distribution<double>(a, 1.0)(rng);
                double y = std::gamma_distribution<double>(b, 1.0)(rng);
                return x / (x + y);
              }
              case Family::Uniform: return a + (b - a) * rng.uniform01();
            }
            return 0.0;
          },
          [&](const EmpiricalNoise& m) {
            std::uniform_int_distribution<std::size_t> pick(0, m.residuals.size() - 1);
            return m.residuals[pick(rng)];
          },
          [&](const MixtureNoise& m) {
            double u = rng.uniform01();
            std::size_t j = 0;
            for (double acc = m.weights[0]; j + 1 < m.weights.size() && u >= acc;)
              acc += m.weights[++j];
            return std::normal_distribution<double>(m.means[j], std::sqrt(m.variances[j]))(rng);
          },
      },
      model_);
}

double NoiseModel::lift(double q, CounterRng& rng) const {
  const double r = draw_residual(rng);
  if (interaction_ == Interaction::Additive) return q - r;
  if (r == 0.0) throw NoiseError("zero residual cannot be inverted under multiplicative noise");
  return q / r;
}

std::vector<double> compute_residuals(std::span<const double> truth, std::span<const double> sensed,
                                      Interaction mode) {
  if (truth.size() != sensed.size()) {
    throw NoiseError("calibration sequences differ in length (" + std::to_string(truth.size()) +
                     " vs " + std::to_string(sensed.size()) + ")");
  }
  if (truth.size() < 2) throw NoiseError("calibration needs at least 2 pairs");
  std::vector<double> out;
  out.reserve(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (!std::isfinite(truth[i]) || !std::isfinite(sensed[i])) {
      throw NoiseError("non-finite calibration value at index " + std::to_string(i));
    }
    if (mode == Interaction::Additive) {
      out.push_back(sensed[i] - truth[i]);
    } else {
      if (truth[i] == 0.0) {
        throw NoiseError("division by zero: ground truth is 0 at index " + std::to_string(i));
      }
      out.push_back(sensed[i] / truth[i]);
    }
  }
  return out;
}

std::vector<double> sample_trajectories(const NoiseModel& model, double q, std::size_t count,
                                        std::uint64_t seed, std::uint64_t reading) {
  if (count == 0) throw NoiseError("ensemble size must be at least 1");
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng(seed, static_cast<std::uint32_t>(i), reading);
    out.push_back(model.lift(q, rng));
  }
  return out;
}

std::string to_json(const NoiseModel& model) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["interaction"] = to_string(model.interaction());
  std::visit(overloaded{
                 [&](const ParametricNoise& m) {
                   j["variant"] = "parametric";
                   j["family"] = to_string(m.family);
                   auto names = parameter_names(m.family);
                   nlohmann::ordered_json params;
                   for (std::size_t i = 0; i < parameter_count(m.family); ++i)
                     params[std::string(names[i])] = m.params[i];
                   j["params"] = params;
                 },
                 [&](const EmpiricalNoise& m) {
                   j["variant"] = "empirical";
                   j["residuals"] = m.residuals;
                 },
                 [&](const MixtureNoise& m) {
                   j["variant"] = "gmm";
                   j["k"] = m.weights.size();
                   j["weights"] = m.weights;
                   j["means"] = m.means;
                   j["variances"] = m.variances;
                 },
             },
             model.model());
  return j.dump(2);
}

NoiseModel noise_model_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw NoiseError(std::string("noise model is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) {
      throw NoiseError("unsupported noise model schema_version");
    }
    Interaction mode = interaction_from_string(j.at("interaction").get<std::string>());
    const auto variant = j.at("variant").get<std::string>();
    if (variant == "parametric") {
      ParametricNoise m{family_from_string(j.at("family").get<std::string>())};
      auto names = parameter_names(m.family);
      for (std::size_t i = 0; i < parameter_count(m.family); ++i)
        m.params[i] = j.at("params").at(std::string(names[i])).get<double>();
      return NoiseModel(m, mode);
    }
    if (variant == "empirical") {
      return NoiseModel(EmpiricalNoise{j.at("residuals").get<std::vector<double>>()}, mode);
    }
    if (variant == "gmm") {
      MixtureNoise m;
      m.weights = j.at("weights").get<std::vector<double>>();
      m.means = j.at("means").get<std::vector<double>>();
      m.variances = j.at("variances").get<std::vector<double>>();
      return NoiseModel(std::move(m), mode);
    }
    throw NoiseError("unknown noise model variant '" + variant + "'");
  } catch (const nlohmann::json::exception& e) {
    throw NoiseError(std::string("malformed noise model: ") + e.what());
  }
}

}  // namespace prstl
