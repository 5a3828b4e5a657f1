// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "prstl/error.hpp"
#include "prstl/monitor.hpp"
#include "prstl/smc.hpp"

namespace prstl::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kRuntime = 2, kViolated = 3 };

/// Invalid combination of arguments (maps to exit code 1).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Parse error rendered with the formula and a caret under the position.
std::string describe_parse_error(std::string_view text, const ParseError& e);

int cmd_check(std::string_view formula, std::ostream& out);

struct MonitorArgs {
  std::string formula;
  std::string trace;
  std::optional<std::string> noise;
  std::size_t samples = 1000;
  double confidence = 0.95;
  IntervalMethod method = IntervalMethod::Wilson;
  std::uint64_t seed = 0;
  TimeSemantics semantics = TimeSemantics::Discrete;
  bool strict = false;
  std::size_t workers = 1;
};

/// JSON lines to `out`: robustness records for probability-free formulas,
/// probability records otherwise. Returns kViolated when a conclusive
/// record has rho <= 0 or a violated verdict.
int cmd_monitor(const MonitorArgs& args, std::ostream& out);

struct CoverageArgs {
  std::vector<double> ps{0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<double> confidences{0.80, 0.90, 0.95, 0.99};
  std::size_t n = 100;
  std::size_t trials = 10000;
  IntervalMethod method = IntervalMethod::Wilson;
  std::uint64_t seed = 0;
  bool json = false;
};
int cmd_validate_coverage(const CoverageArgs& args, std::ostream& out);

struct SprtArgs {
  SprtConfig config;
  std::size_t trials = 5000;
  std::uint64_t seed = 0;
  bool json = false;
};
int cmd_validate_sprt(const SprtArgs& args, std::ostream& out);

struct BenchArgs {
  std::string preset = "phi1";
  std::size_t samples = 100000;
  std::size_t repeats = 5;
  double bound_scale = 1.0;
  std::uint64_t seed = 0;
  bool json = false;
};
int cmd_bench(const BenchArgs& args, std::ostream& out);

struct FitArgs {
  std::string calibration;
  /// A parametric family name, "empirical" or "gmm".
  std::string model = "gaussian";
  Interaction interaction = Interaction::Additive;
  std::size_t components = 2;
};
/// Writes the fitted model as JSON (one line).
int cmd_fit(const FitArgs& args, std::ostream& out);

}  // namespace prstl::cli
