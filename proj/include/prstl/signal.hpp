// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace prstl {

enum class TimeSemantics { Discrete, Dense };

/// Time-ordered samples of one variable. Timestamps strictly increase.
/// Samples dropped by retention are released lazily; `times()`/`values()`
/// only expose the retained suffix.
class Series {
 public:
  void append(double time, double value);

  std::size_t size() const noexcept { return times_.size() - head_; }
  bool empty() const noexcept { return size() == 0; }

  std::span<const double> times() const noexcept {
    return std::span<const double>(times_).subspan(head_);
  }
  std::span<const double> values() const noexcept {
    return std::span<const double>(values_).subspan(head_);
  }

  double first_time() const { return times_.at(head_); }
  double last_time() const { return times_.back(); }

  /// Value at exactly `t`, or nullopt when no sample carries that timestamp.
  std::optional<double> exact(double t) const noexcept;
  /// Piecewise-linear interpolation; nullopt outside [first_time, last_time].
  std::optional<double> interpolate(double t) const noexcept;

  /// Drops samples strictly older than `cutoff`, keeping the newest sample
  /// before it so that interpolation at `cutoff` stays defined.
  void drop_before(double cutoff);

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  std::size_t head_ = 0;
};

/// Multivariate signal with a time horizon.
class Trace {
 public:
  explicit Trace(TimeSemantics semantics = TimeSemantics::Discrete,
                 std::optional<double> horizon = std::nullopt);

  TimeSemantics semantics() const noexcept { return semantics_; }
  const std::optional<double>& horizon() const noexcept { return horizon_; }

  /// Appends a sample. Throws SignalError on out-of-order timestamps (a time
  /// not strictly greater than the variable's last one), negative or
  /// non-finite times, non-finite values, or times past a bounded horizon.
  void append(std::string_view variable, double time, double value);

  /// Point query under the trace's semantics. Throws SignalError for unknown
  /// variables, missing samples (discrete) and queries outside the stored
  /// range (dense).
  double value_at(std::string_view variable, double t) const;

  /// Opt-in retention: after each append, samples older than
  /// (latest - bound) are dropped. Without a bound everything is kept.
  void set_retention(std::optional<double> bound);
  const std::optional<double>& retention() const noexcept { return retention_; }

  /// Drops every variable's samples older than `cutoff`, keeping the newest
  /// one before it (see Series::drop_before).
  void drop_before(double cutoff);

  bool has_variable(std::string_view variable) const;
  const Series& series(std::string_view variable) const;
  std::vector<std::string> variables() const;
  std::size_t retained_samples() const noexcept;

  /// Sorted union of the retained timestamps of `variables` (all variables
  /// when empty).
  std::vector<double> timeline(std::span<const std::string> variables = {}) const;

 private:
  TimeSemantics semantics_;
  std::optional<double> horizon_;
  std::optional<double> retention_;
  std::map<std::string, Series, std::less<>> series_;
};

/// N traces drawn from one distribution. Members share variables and
/// timestamps.
class TraceEnsemble {
 public:
  explicit TraceEnsemble(std::vector<Trace> members);

  std::size_t size() const noexcept { return members_.size(); }
  const Trace& operator[](std::size_t i) const { return members_[i]; }
  std::span<const Trace> members() const noexcept { return members_; }

 private:
  std::vector<Trace> members_;
};

}  // namespace prstl
