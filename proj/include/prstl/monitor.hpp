// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prstl/formula.hpp"
#include "prstl/noise.hpp"
#include "prstl/robustness.hpp"
#include "prstl/signal.hpp"
#include "prstl/smc.hpp"

namespace prstl {

struct Reading {
  double time;
  std::string variable;
  double value;
};

struct ProbabilityRecord {
  /// Timestamp of the reading that triggered the evaluation.
  double time;
  /// Instant the inner formula was evaluated at (time minus the formula's
  /// future reach, snapped to the sample grid).
  double eval_time;
  ProbabilityEstimate estimate;
  Verdict verdict;
  /// True when the inner formula's window at eval_time is not yet covered
  /// by the data (start of stream, unbounded or `next` operators).
  bool inconclusive_tail;
};

struct MonitorOptions {
  SmcConfig smc;
  TimeSemantics semantics = TimeSemantics::Discrete;
  /// Worker threads for trajectory evaluation; results do not depend on it.
  std::size_t workers = 1;
};

/// Streaming monitor for a formula P~p(phi): every reading is lifted into N
/// candidate true values by the noise model, appended to N trajectory
/// traces, and phi's robustness on each trajectory is aggregated into a
/// probability estimate with a three-valued verdict.
///
/// Trajectory i at reading k (k counts every ingested sample) draws from
/// substream (seed, i, k). Traces keep only the samples phi can still read.
class ProbabilisticMonitor {
 public:
  /// Throws RobustnessError unless `formula` is a top-level probability
  /// node over a probability-free body, SmcError for a bad configuration.
  ProbabilisticMonitor(const Formula& formula, NoiseModel model, MonitorOptions options);

  /// Ingests all readings sharing timestamp `time` and evaluates. Returns
  /// nothing while a free variable of phi has no sample yet.
  std::optional<ProbabilityRecord> push(double time,
                                        std::span<const std::pair<std::string, double>> values);

  const Formula& body() const noexcept { return body_; }
  Comparison comparison() const noexcept { return op_; }
  double threshold() const noexcept { return threshold_; }
  std::size_t retained_samples() const noexcept;

 private:
  Formula body_;
  Comparison op_;
  double threshold_;
  NoiseModel model_;
  MonitorOptions options_;
  std::vector<Trace> trajectories_;
  std::vector<std::string> variables_;
  std::set<std::string> seen_;
  double future_reach_;
  std::size_t next_depth_;
  std::uint64_t reading_index_ = 0;
};

/// Runs a ProbabilisticMonitor over readings sorted by time (stable within
/// a timestamp), one record per distinct timestamp.
std::vector<ProbabilityRecord> monitor_stream(const Formula& formula, const NoiseModel& model,
                                              std::span<const Reading> readings,
                                              const MonitorOptions& options);

/// Stateful facade for scripting front ends: create from formula text, add
/// samples (one at a time or in batches), query robustness or probability,
/// close. Results match the CLI's for the same inputs and seed.
class Monitor {
 public:
  /// Parses `formula` (ParseError) and validates the configuration (SmcError).
  static Monitor create(std::string_view formula, double confidence, std::size_t samples,
                        std::uint64_t seed, IntervalMethod method = IntervalMethod::Wilson,
                        TimeSemantics semantics = TimeSemantics::Discrete);

  void set_noise_model(NoiseModel model);
  void add_signal(std::string_view variable, double time, double value);
  /// Batch ingestion of one variable; equivalent to repeated add_signal.
  void add_signals(std::string_view variable, std::span<const double> times,
                   std::span<const double> values);

  /// eval_all over the samples so far (probability-free formulas only).
  std::vector<RobustnessSample> robustness();
  /// Latest probability record (probabilistic formulas only).
  ProbabilityRecord probability();
  /// Every probability record so far.
  const std::vector<ProbabilityRecord>& records();

  const Formula& formula() const noexcept { return formula_; }
  void close() noexcept { closed_ = true; }
  bool closed() const noexcept { return closed_; }

 private:
  Monitor(Formula formula, MonitorOptions options);
  void check_open() const;
  void flush();

  Formula formula_;
  MonitorOptions options_;
  Trace trace_;
  std::optional<NoiseModel> model_;
  std::optional<ProbabilisticMonitor> monitor_;
  std::vector<std::pair<std::string, double>> pending_;
  std::optional<double> pending_time_;
  std::vector<ProbabilityRecord> records_;
  bool closed_ = false;
};

}  // namespace prstl
