// SPDX-License-Identifier: Apache-2.0
//
// prstl: check formulas, monitor traces, run the statistical validation
// harness, benchmark the window evaluator and fit noise models.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cli/commands.hpp"

using namespace prstl;
using namespace prstl::cli;

namespace {

template <class Enum, class Parse>
CLI::Option* add_enum(CLI::App* app, const std::string& name, Enum& target, Parse parse,
                      const std::string& help) {
  return app
      ->add_option_function<std::string>(
          name, [&target, parse](const std::string& s) { target = parse(s); }, help)
      ->type_name("NAME");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runtime verification for probabilistic signal temporal logic", "prstl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "prstl 0.1.0");

  std::string check_text;
  auto* check = app.add_subcommand("check", "Parse a formula and print its AST as JSON");
  check->add_option("formula", check_text, "Formula text")->required();

  MonitorArgs mon;
  std::string out_path;
  std::string semantics = "discrete";
  auto* monitor = app.add_subcommand("monitor", "Evaluate a formula over a CSV trace");
  monitor->add_option("formula", mon.formula, "Formula text")->required();
  monitor->add_option("trace", mon.trace, "Trace CSV (time,variable,value)")->required();
  monitor->add_option("--noise", mon.noise, "Noise model JSON (probabilistic formulas)");
  monitor->add_option("-N,--samples", mon.samples, "Trajectories per estimate")
      ->check(CLI::PositiveNumber);
  monitor->add_option("--confidence", mon.confidence, "Interval confidence level")
      ->check(CLI::Range(0.0, 1.0));
  add_enum(monitor, "--interval", mon.method, interval_method_from_string, "wilson | cp");
  monitor->add_option("--seed", mon.seed, "Random seed")->envname("PRSTL_SEED");
  monitor->add_flag_callback("--dense", [&] { mon.semantics = TimeSemantics::Dense; },
                             "Interpolated (dense-time) semantics");
  monitor->add_flag_callback("--discrete", [&] { mon.semantics = TimeSemantics::Discrete; },
                             "Sample-grid semantics (default)");
  monitor->add_flag("--strict", mon.strict, "Drop results whose window exceeds the trace");
  monitor->add_option("-j,--workers", mon.workers, "Worker threads")->check(CLI::PositiveNumber);
  monitor->add_option("-o,--output", out_path, "Write records here instead of stdout");

  CoverageArgs cov;
  SprtArgs sprt;
  bool json = false;
  std::uint64_t seed = 0;
  auto* validate = app.add_subcommand("validate", "Statistical validation harness");
  auto* want_coverage = validate->add_flag("--coverage", "Interval coverage grid");
  auto* want_sprt = validate->add_flag("--sprt", "SPRT error rates");
  want_coverage->excludes(want_sprt);
  validate->add_option("--p", cov.ps, "True probabilities")->delimiter(',');
  validate->add_option("--levels", cov.confidences, "Confidence levels")->delimiter(',');
  validate->add_option("-n", cov.n, "Bernoulli draws per estimate");
  add_enum(validate, "--interval", cov.method, interval_method_from_string, "wilson | cp");
  std::optional<std::size_t> trials;
  validate->add_option("--trials", trials,
                       "Trials per cell (default 10000) or per hypothesis (default 5000)");
  validate->add_option("--p0", sprt.config.p0, "H0 boundary");
  validate->add_option("--p1", sprt.config.p1, "H1 boundary");
  validate->add_option("--alpha", sprt.config.alpha, "Type I error bound");
  validate->add_option("--beta", sprt.config.beta, "Type II error bound");
  validate->add_option("--seed", seed, "Random seed")->envname("PRSTL_SEED");
  validate->add_flag("--json", json, "JSON output");

  BenchArgs bench;
  auto* benchmark = app.add_subcommand("bench", "Time discrete robustness on a synthetic trace");
  benchmark->add_option("--formula", bench.preset, "Preset phi1..phi5");
  benchmark->add_option("--samples", bench.samples, "Trace length");
  benchmark->add_option("--repeats", bench.repeats, "Timed repetitions");
  benchmark->add_option("--bound-scale", bench.bound_scale, "Multiply interval bounds")
      ->check(CLI::PositiveNumber);
  benchmark->add_option("--seed", bench.seed, "Random seed")->envname("PRSTL_SEED");
  benchmark->add_flag("--json", bench.json, "JSON output");

  FitArgs fit;
  auto* fitting = app.add_subcommand("fit", "Fit a noise model to calibration data");
  fitting->add_option("calibration", fit.calibration, "CSV with header truth,sensed")->required();
  fitting->add_option("--model", fit.model,
                      "gaussian | lognormal | exponential | gamma | beta | uniform | empirical | gmm");
  add_enum(fitting, "--interaction", fit.interaction, interaction_from_string,
           "additive | multiplicative");
  fitting->add_option("-k,--components", fit.components, "Mixture components (gmm)")
      ->check(CLI::PositiveNumber);
  fitting->add_option("-o,--output", out_path, "Write the model here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const Error& e) {
    // Enum option callbacks run during parsing.
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kRuntime;
    }
    out = &file;
  }

  std::string_view formula_text;
  try {
    if (*check) {
      formula_text = check_text;
      return cmd_check(check_text, *out);
    }
    if (*monitor) {
      formula_text = mon.formula;
      return cmd_monitor(mon, *out);
    }
    if (*validate) {
      if (*want_sprt) {
        if (trials) sprt.trials = *trials;
        sprt.seed = seed;
        sprt.json = json;
        return cmd_validate_sprt(sprt, *out);
      }
      if (!*want_coverage) throw UsageError("validate needs --coverage or --sprt");
      if (trials) cov.trials = *trials;
      cov.seed = seed;
      cov.json = json;
      return cmd_validate_coverage(cov, *out);
    }
    if (*benchmark) return cmd_bench(bench, *out);
    if (*fitting) return cmd_fit(fit, *out);
  } catch (const ParseError& e) {
    std::cerr << describe_parse_error(formula_text, e) << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
