// SPDX-License-Identifier: Apache-2.0

#include "cli/commands.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "cli/io.hpp"
#include "prstl/bench.hpp"
#include "prstl/noise.hpp"
#include "prstl/records.hpp"
#include "prstl/validation.hpp"

namespace prstl::cli {

using Json = nlohmann::ordered_json;

std::string describe_parse_error(std::string_view text, const ParseError& e) {
  std::ostringstream os;
  os << "error: " << e.what() << "\n  " << text << "\n  "
     << std::string(std::min(e.position(), text.size()), ' ') << "^";
  return os.str();
}

int cmd_check(std::string_view formula, std::ostream& out) {
  out << formula_to_json(parse_formula(formula)) << "\n";
  return kOk;
}

int cmd_monitor(const MonitorArgs& args, std::ostream& out) {
  const Formula f = parse_formula(args.formula);
  const bool probabilistic = f.as<node::Probability>() != nullptr;
  if (probabilistic && !args.noise) {
    throw UsageError("a probabilistic formula needs a noise model (--noise FILE)");
  }
  if (!probabilistic && args.noise) {
    throw UsageError("--noise applies only to probabilistic formulas");
  }
  if (probabilistic && args.strict) {
    throw UsageError("--strict applies only to probability-free formulas");
  }
  std::vector<Reading> readings = read_trace_file(args.trace);
  bool violated = false;

  if (probabilistic) {
    NoiseModel model = noise_model_from_json(read_text_file(*args.noise));
    MonitorOptions options;
    options.smc = SmcConfig{args.samples, args.confidence, args.method, args.seed};
    options.semantics = args.semantics;
    options.workers = args.workers;
    for (const auto& rec : monitor_stream(f, model, readings, options)) {
      out << probability_record(rec) << "\n";
      violated = violated || rec.verdict == Verdict::Violated;
    }
  } else {
    std::stable_sort(readings.begin(), readings.end(),
                     [](const Reading& a, const Reading& b) { return a.time < b.time; });
    Trace trace(args.semantics);
    for (const auto& r : readings) trace.append(r.variable, r.time, r.value);
    RobustnessOptions options;
    options.horizon = args.strict ? HorizonPolicy::Strict : HorizonPolicy::Clip;
    for (const auto& s : eval_all(f, trace, options)) {
      out << robustness_record(s) << "\n";
      violated = violated || (!s.inconclusive && s.rho <= 0.0);
    }
  }
  out.flush();
  return violated ? kViolated : kOk;
}

namespace {

std::string percent(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << 100.0 * v << "%";
  return os.str();
}

}  // namespace

int cmd_validate_coverage(const CoverageArgs& args, std::ostream& out) {
  if (args.ps.empty() || args.confidences.empty()) throw UsageError("empty coverage grid");
  for (double p : args.ps)
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("probabilities must lie in [0, 1]");
  if (args.n == 0 || args.trials == 0) throw UsageError("n and trials must be positive");
  auto cells = coverage_grid(args.ps, args.confidences, args.n, args.trials, args.method, args.seed);
  if (args.json) {
    Json j{{"schema_version", kRecordSchemaVersion}, {"type", "coverage"},
           {"method", to_string(args.method)}, {"n", args.n}, {"trials", args.trials},
           {"seed", args.seed}, {"cells", Json::array()}};
    for (const auto& c : cells) {
      j["cells"].push_back({{"p", c.p}, {"confidence", c.confidence}, {"coverage", c.coverage},
                            {"chi_squared", c.chi_squared},
                            {"degrees_of_freedom", c.degrees_of_freedom}, {"p_value", c.p_value}});
    }
    out << j.dump() << "\n";
    return kOk;
  }
  out << "coverage: method=" << to_string(args.method) << " n=" << args.n
      << " trials=" << args.trials << " seed=" << args.seed << "\n";
  out << std::setw(6) << "p" << std::setw(12) << "confidence" << std::setw(11) << "coverage"
      << std::setw(10) << "chi2" << std::setw(5) << "df" << std::setw(10) << "p-value" << "\n";
  for (const auto& c : cells) {
    out << std::setw(6) << c.p << std::setw(12) << percent(c.confidence) << std::setw(11)
        << percent(c.coverage) << std::setw(10) << std::fixed << std::setprecision(2)
        << c.chi_squared << std::setw(5) << c.degrees_of_freedom << std::setw(10)
        << std::setprecision(4) << c.p_value << std::defaultfloat << "\n";
  }
  return kOk;
}

int cmd_validate_sprt(const SprtArgs& args, std::ostream& out) {
  if (args.trials == 0) throw UsageError("trials must be positive");
  auto rates = sprt_error_rates(args.config, args.trials, args.seed);
  if (args.json) {
    Json j{{"schema_version", kRecordSchemaVersion}, {"type", "sprt"},
           {"p0", args.config.p0}, {"p1", args.config.p1}, {"alpha", args.config.alpha},
           {"beta", args.config.beta}, {"trials", rates.trials}, {"seed", args.seed},
           {"type_one", rates.type_one}, {"type_two", rates.type_two},
           {"mean_samples_h0", rates.mean_samples_h0}, {"mean_samples_h1", rates.mean_samples_h1}};
    out << j.dump() << "\n";
    return kOk;
  }
  out << "sprt: p0=" << args.config.p0 << " p1=" << args.config.p1
      << " alpha=" << args.config.alpha << " beta=" << args.config.beta
      << " trials=" << rates.trials << " seed=" << args.seed << "\n"
      << "  type I  (accept H1 at p0): " << percent(rates.type_one)
      << "  mean samples " << std::fixed << std::setprecision(1) << rates.mean_samples_h0 << "\n"
      << "  type II (accept H0 at p1): " << percent(rates.type_two)
      << "  mean samples " << rates.mean_samples_h1 << std::defaultfloat << "\n";
  return kOk;
}

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  if (args.repeats == 0) throw UsageError("--repeats must be at least 1");
  if (args.samples == 0) throw UsageError("--samples must be at least 1");
  auto presets = bench_presets();
  if (std::find(presets.begin(), presets.end(), args.preset) == presets.end()) {
    throw UsageError("unknown preset '" + args.preset + "'");
  }
  auto r = run_bench(args.preset, args.samples, args.repeats, args.seed, args.bound_scale);
  if (args.json) {
    Json j{{"schema_version", kRecordSchemaVersion}, {"type", "bench"},
           {"preset", r.preset}, {"formula", r.formula}, {"samples", r.samples},
           {"repeats", r.repeats}, {"mean_seconds", r.mean_seconds},
           {"std_seconds", r.std_seconds}, {"samples_per_second", r.samples_per_second},
           {"peak_deque_entries", r.peak_deque_entries}};
    out << j.dump() << "\n";
    return kOk;
  }
  out << r.preset << "  " << r.formula << "\n"
      << "  samples " << r.samples << ", repeats " << r.repeats << "\n"
      << std::scientific << std::setprecision(3) << "  time " << r.mean_seconds << " s +- "
      << r.std_seconds << " s\n"
      << "  throughput " << r.samples_per_second << " samples/s\n"
      << std::defaultfloat << "  peak deque entries " << r.peak_deque_entries << "\n";
  return kOk;
}

int cmd_fit(const FitArgs& args, std::ostream& out) {
  auto data = read_calibration_file(args.calibration);
  auto residuals = compute_residuals(data.truth, data.sensed, args.interaction);
  if (args.model == "empirical") {
    out << to_json(fit_empirical(residuals, args.interaction)) << "\n";
  } else if (args.model == "gmm") {
    out << to_json(fit_gmm(residuals, args.interaction, GmmOptions{args.components})) << "\n";
  } else {
    Family family;
    try {
      family = family_from_string(args.model);
    } catch (const NoiseError&) {
      throw UsageError("unknown model '" + args.model +
                       "' (expected a family name, 'empirical' or 'gmm')");
    }
    out << to_json(fit_parametric(residuals, family, args.interaction)) << "\n";
  }
  return kOk;
}

}  // namespace prstl::cli
