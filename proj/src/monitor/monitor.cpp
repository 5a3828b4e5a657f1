// SPDX-License-Identifier: Apache-2.0

#include "prstl/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "prstl/error.hpp"

namespace prstl {

namespace {

// Runs fn(begin, end) over `workers` contiguous chunks of [0, count).
template <class Fn>
void parallel_for(std::size_t workers, std::size_t count, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        fn(std::min(count, w * chunk), std::min(count, (w + 1) * chunk));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

ProbabilisticMonitor::ProbabilisticMonitor(const Formula& formula, NoiseModel model,
                                           MonitorOptions options)
    : body_(Formula::top()),
      op_(Comparison::GreaterEqual),
      threshold_(0.0),
      model_(std::move(model)),
      options_(options) {
  options_.smc.validate();
  const auto* prob = formula.as<node::Probability>();
  if (!prob) throw RobustnessError("monitoring needs a formula of the form P~p(phi)");
  if (contains_probability(prob->child)) {
    throw RobustnessError("nested probability operators are not supported");
  }
  body_ = prob->child;
  op_ = prob->op;
  threshold_ = prob->threshold;
  auto vars = free_variables(body_);
  variables_.assign(vars.begin(), vars.end());
  future_reach_ = future_reach(body_);
  next_depth_ = next_depth(body_);
  trajectories_.assign(options_.smc.samples, Trace(options_.semantics));
}

std::size_t ProbabilisticMonitor::retained_samples() const noexcept {
  return trajectories_.empty() ? 0 : trajectories_.front().retained_samples();
}

std::optional<ProbabilityRecord> ProbabilisticMonitor::push(
    double time, std::span<const std::pair<std::string, double>> values) {
  const std::size_t n = trajectories_.size();
  const std::uint64_t first_reading = reading_index_;
  parallel_for(options_.workers, n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::uint64_t k = first_reading;
      for (const auto& [name, q] : values) {
        CounterRng rng(options_.smc.seed, static_cast<std::uint32_t>(i), k++);
        trajectories_[i].append(name, time, model_.lift(q, rng));
      }
    }
  });
  reading_index_ += values.size();
  for (const auto& [name, q] : values) seen_.insert(name);
  for (const auto& v : variables_)
    if (!seen_.count(v)) return std::nullopt;

  // Latest instant whose windows the data already covers.
  const Trace& first = trajectories_.front();
  const auto grid = evaluation_grid(body_, first);
  const std::size_t last = grid.size() - 1;
  double eval_time = grid.front();
  bool tail = true;
  if (options_.semantics == TimeSemantics::Discrete) {
    if (next_depth_ <= last) {
      const double limit = grid[last] - future_reach_;
      auto end = grid.begin() + static_cast<std::ptrdiff_t>(last - next_depth_ + 1);
      auto it = std::upper_bound(grid.begin(), end, limit);
      if (it != grid.begin()) {
        eval_time = *std::prev(it);
        tail = false;
      }
    }
  } else {
    const double candidate = grid[last] - future_reach_;
    if (candidate >= grid.front()) {
      eval_time = candidate;
      auto idx = static_cast<std::size_t>(
          std::upper_bound(grid.begin(), grid.end(), candidate) - grid.begin() - 1);
      tail = idx + next_depth_ > last;
    }
  }

  std::vector<std::size_t> successes(std::max<std::size_t>(1, options_.workers), 0);
  const double past = past_reach(body_);
  const std::size_t chunks = successes.size();
  parallel_for(chunks, chunks, [&](std::size_t wbegin, std::size_t wend) {
    for (std::size_t w = wbegin; w < wend; ++w) {
      const std::size_t per = (n + chunks - 1) / chunks;
      for (std::size_t i = std::min(n, w * per); i < std::min(n, (w + 1) * per); ++i) {
        successes[w] += eval_robustness(body_, trajectories_[i], eval_time) > 0.0;
        if (std::isfinite(past)) trajectories_[i].drop_before(eval_time - past);
      }
    }
  });
  const std::size_t hits = std::accumulate(successes.begin(), successes.end(), std::size_t{0});
  ProbabilityEstimate est =
      estimate_from_counts(hits, n, options_.smc.confidence, options_.smc.method);
  return ProbabilityRecord{time, eval_time, est, judge(est, op_, threshold_), tail};
}

std::vector<ProbabilityRecord> monitor_stream(const Formula& formula, const NoiseModel& model,
                                              std::span<const Reading> readings,
                                              const MonitorOptions& options) {
  ProbabilisticMonitor monitor(formula, model, options);
  std::vector<const Reading*> order;
  order.reserve(readings.size());
  for (const auto& r : readings) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(),
                   [](const Reading* a, const Reading* b) { return a->time < b->time; });
  std::vector<ProbabilityRecord> out;
  std::vector<std::pair<std::string, double>> group;
  for (std::size_t i = 0; i < order.size();) {
    const double t = order[i]->time;
    group.clear();
    for (; i < order.size() && order[i]->time == t; ++i)
      group.emplace_back(order[i]->variable, order[i]->value);
    if (auto rec = monitor.push(t, group)) out.push_back(*rec);
  }
  return out;
}

// ---------------------------------------------------------------------------

Monitor::Monitor(Formula formula, MonitorOptions options)
    : formula_(std::move(formula)), options_(options), trace_(options.semantics) {}

Monitor Monitor::create(std::string_view formula, double confidence, std::size_t samples,
                        std::uint64_t seed, IntervalMethod method, TimeSemantics semantics) {
  MonitorOptions options;
  options.smc = SmcConfig{samples, confidence, method, seed};
  options.smc.validate();
  options.semantics = semantics;
  return Monitor(parse_formula(formula), options);
}

void Monitor::check_open() const {
  if (closed_) throw Error("monitor is closed");
}

void Monitor::set_noise_model(NoiseModel model) {
  check_open();
  if (monitor_) throw Error("noise model must be set before the first sample");
  model_ = std::move(model);
}

void Monitor::add_signal(std::string_view variable, double time, double value) {
  check_open();
  if (!formula_.as<node::Probability>()) {
    trace_.append(variable, time, value);
    return;
  }
  if (!std::isfinite(time) || !std::isfinite(value)) {
    throw SignalError(SignalError::Kind::NonFinite, "non-finite sample for '" +
                                                        std::string(variable) + "'");
  }
  if (pending_time_ && time < *pending_time_) {
    throw SignalError(SignalError::Kind::OutOfOrder,
                      "samples must arrive in time order (t=" + format_number(time) +
                          " after t=" + format_number(*pending_time_) + ")");
  }
  if (pending_time_ && time > *pending_time_) flush();
  pending_time_ = time;
  pending_.emplace_back(std::string(variable), value);
}

void Monitor::add_signals(std::string_view variable, std::span<const double> times,
                          std::span<const double> values) {
  if (times.size() != values.size()) {
    throw SignalError(SignalError::Kind::Mismatch, "times and values differ in length");
  }
  for (std::size_t i = 0; i < times.size(); ++i) add_signal(variable, times[i], values[i]);
}

void Monitor::flush() {
  if (pending_.empty()) return;
  if (!monitor_) {
    if (!model_) throw SmcError("a probabilistic formula needs a noise model");
    monitor_.emplace(formula_, *model_, options_);
  }
  auto group = std::move(pending_);
  pending_.clear();
  if (auto rec = monitor_->push(*pending_time_, group)) records_.push_back(*rec);
}

std::vector<RobustnessSample> Monitor::robustness() {
  check_open();
  if (formula_.as<node::Probability>()) {
    throw RobustnessError("robustness() needs a probability-free formula; use probability()");
  }
  return eval_all(formula_, trace_);
}

ProbabilityRecord Monitor::probability() {
  check_open();
  if (!formula_.as<node::Probability>()) {
    throw SmcError("probability() needs a formula of the form P~p(phi)");
  }
  flush();
  if (records_.empty()) throw SmcError("no probability estimate yet: the trace is empty");
  return records_.back();
}

const std::vector<ProbabilityRecord>& Monitor::records() {
  check_open();
  flush();
  return records_;
}

}  // namespace prstl
