// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <span>
#include <stdexcept>
#include <vector>

namespace prstl {

enum class ExtremumMode { Min, Max };

struct TimedValue {
  double time;
  double value;
};

/// Monotonic deque over (timestamp, value) pairs.
///
/// Invariants, front to back: timestamps strictly increase; values are
/// non-decreasing in Min mode and non-increasing in Max mode. The front
/// therefore holds the extremum of everything retained.
///
/// `push` discards back entries that are strictly worse than the incoming
/// value (ties are kept), so every sample is pushed and popped at most once.
template <class Scalar = double>
class MonotonicDeque {
 public:
  struct Entry {
    double time;
    Scalar value;
  };

  explicit MonotonicDeque(ExtremumMode mode) : mode_(mode) {}

  ExtremumMode mode() const noexcept { return mode_; }

  void push(double time, Scalar value) {
    if (mode_ == ExtremumMode::Min) {
      while (!entries_.empty() && entries_.back().value > value) entries_.pop_back();
    } else {
      while (!entries_.empty() && entries_.back().value < value) entries_.pop_back();
    }
    entries_.push_back({time, value});
    peak_ = std::max(peak_, entries_.size());
  }

  /// Drops front entries with time < cutoff.
  void evict_before(double cutoff) {
    while (!entries_.empty() && entries_.front().time < cutoff) entries_.pop_front();
  }

  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t peak_size() const noexcept { return peak_; }
  const Entry& front() const { return entries_.front(); }
  const std::deque<Entry>& entries() const noexcept { return entries_; }

  void clear() noexcept { entries_.clear(); }

 private:
  ExtremumMode mode_;
  std::deque<Entry> entries_;
  std::size_t peak_ = 0;
};

/// Trailing-window extremum: output k is the min (or max) of all v_i with
/// t_k - width <= t_i <= t_k. Throws std::invalid_argument for a
/// non-positive width or timestamps that do not strictly increase.
inline std::vector<double> sliding_extremum(std::span<const TimedValue> stream, double width,
                                            ExtremumMode mode,
                                            std::size_t* peak_entries = nullptr) {
  if (!(width > 0.0)) throw std::invalid_argument("sliding window width must be positive");
  MonotonicDeque<double> deque(mode);
  std::vector<double> out;
  out.reserve(stream.size());
  for (std::size_t k = 0; k < stream.size(); ++k) {
    const auto [t, v] = stream[k];
    if (k > 0 && !(t > stream[k - 1].time)) {
      throw std::invalid_argument("sliding window timestamps must strictly increase");
    }
    deque.evict_before(t - width);
    deque.push(t, v);
    out.push_back(deque.front().value);
  }
  if (peak_entries) *peak_entries = deque.peak_size();
  return out;
}

}  // namespace prstl
