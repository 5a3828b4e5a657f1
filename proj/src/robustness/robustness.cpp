// SPDX-License-Identifier: Apache-2.0

#include "prstl/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <map>

#include "prstl/detail/overloaded.hpp"
#include "prstl/error.hpp"
#include "prstl/monotonic_deque.hpp"

namespace prstl {

using detail::overloaded;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double predicate_margin(Comparison op, double diff) {
  switch (op) {
    case Comparison::Greater:
    case Comparison::GreaterEqual: return diff;
    case Comparison::Less:
    case Comparison::LessEqual: return -diff;
    case Comparison::Equal: return -std::fabs(diff);
    case Comparison::NotEqual: return std::fabs(diff);
  }
  return 0.0;
}

// Evaluates formula nodes over sorted query times. Each temporal node asks
// its children for the times its windows need (the sample grid restricted to
// the window span, plus the window endpoints under dense semantics), then
// folds them with a single monotonic-deque pass.
class Evaluator {
 public:
  Evaluator(const Trace& trace, std::vector<double> grid, EvalStats* stats)
      : trace_(trace),
        grid_(std::move(grid)),
        dense_(trace.semantics() == TimeSemantics::Dense),
        stats_(stats) {}

  std::vector<double> eval(const Formula& f, std::span<const double> times) {
    return std::visit(
        overloaded{
            [&](const node::Top&) { return std::vector<double>(times.size(), kInf); },
            [&](const node::Bottom&) { return std::vector<double>(times.size(), -kInf); },
            [&](const node::Predicate& p) { return predicate(p, times); },
            [&](const node::Not& n) {
              auto v = eval(n.child, times);
              for (double& r : v) r = -r;
              return v;
            },
            [&](const node::And& n) {
              return combine(n.lhs, n.rhs, times, [](double a, double b) { return std::min(a, b); });
            },
            [&](const node::Or& n) {
              return combine(n.lhs, n.rhs, times, [](double a, double b) { return std::max(a, b); });
            },
            [&](const node::Implies& n) {
              return combine(n.lhs, n.rhs, times,
                             [](double a, double b) { return std::max(-a, b); });
            },
            [&](const node::Always& n) {
              return window(n.child, times, n.interval.lower, n.interval.upper_or_inf(),
                            ExtremumMode::Min);
            },
            [&](const node::Eventually& n) {
              return window(n.child, times, n.interval.lower, n.interval.upper_or_inf(),
                            ExtremumMode::Max);
            },
            [&](const node::Historically& n) {
              return window(n.child, times, -n.interval.upper_or_inf(), -n.interval.lower,
                            ExtremumMode::Min);
            },
            [&](const node::Once& n) {
              return window(n.child, times, -n.interval.upper_or_inf(), -n.interval.lower,
                            ExtremumMode::Max);
            },
            [&](const node::Until& n) { return until(n, times); },
            [&](const node::Since& n) { return since(n, times); },
            [&](const node::Next& n) { return next(n, times); },
            [&](const node::Probability&) -> std::vector<double> {
              throw RobustnessError(
                  "probabilistic operator reached during robustness evaluation; it must be "
                  "resolved by the statistical model checker");
            },
        },
        f.node());
  }

 private:
  template <class Op>
  std::vector<double> combine(const Formula& a, const Formula& b, std::span<const double> times,
                              Op op) {
    auto lhs = eval(a, times);
    auto rhs = eval(b, times);
    for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] = op(lhs[i], rhs[i]);
    return lhs;
  }

  std::vector<double> column(const std::string& name, std::span<const double> times) const {
    const Series& s = trace_.series(name);
    std::vector<double> out;
    out.reserve(times.size());
    auto ts = s.times();
    auto vs = s.values();
    std::size_t k = 0;
    for (double t : times) {
      while (k < ts.size() && ts[k] < t) ++k;
      if (k < ts.size() && ts[k] == t) {
        out.push_back(vs[k]);
      } else if (!dense_) {
        throw SignalError(SignalError::Kind::NoSample,
                          "no sample of '" + name + "' at t=" + format_number(t));
      } else if (k == 0 || k == ts.size()) {
        out.push_back(trace_.value_at(name, t));  // throws the range error
      } else {
        double t1 = ts[k - 1], t2 = ts[k], v1 = vs[k - 1], v2 = vs[k];
        out.push_back(v1 + (v2 - v1) * (t - t1) / (t2 - t1));
      }
    }
    return out;
  }

  std::vector<double> predicate(const node::Predicate& p, std::span<const double> times) {
    std::map<std::string, std::vector<double>, std::less<>> columns;
    auto lookup = [&](const std::string& name) -> std::span<const double> {
      auto it = columns.find(name);
      if (it == columns.end()) it = columns.emplace(name, column(name, times)).first;
      return it->second;
    };
    auto lhs = eval_expression_columns(p.lhs, lookup, times.size());
    auto rhs = eval_expression_columns(p.rhs, lookup, times.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] = predicate_margin(p.op, lhs[i] - rhs[i]);
    return lhs;
  }

  // Times at which a child must be known to answer windows [s+lo, s+hi] for
  // every query s; `offsets` lists the window endpoints (plus 0 when the
  // query instant itself participates).
  std::vector<double> child_times(std::span<const double> times,
                                  std::initializer_list<double> offsets) const {
    if (times.empty() || grid_.empty()) return {};
    double lo = *std::min_element(offsets.begin(), offsets.end());
    double hi = *std::max_element(offsets.begin(), offsets.end());
    double from = times.front() + lo;
    double to = times.back() + hi;
    auto first = std::lower_bound(grid_.begin(), grid_.end(), from);
    auto last = std::upper_bound(grid_.begin(), grid_.end(), to);
    std::vector<double> out(first, last);
    if (!dense_) return out;
    double g0 = grid_.front(), g1 = grid_.back();
    for (double s : times) {
      for (double off : offsets) {
        double p = s + off;
        if (std::isfinite(p) && p >= g0 && p <= g1) out.push_back(p);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<double> window(const Formula& child, std::span<const double> times, double lo,
                             double hi, ExtremumMode mode) {
    auto ctimes = child_times(times, {lo, hi});
    auto cvals = eval(child, ctimes);
    const double identity = mode == ExtremumMode::Min ? kInf : -kInf;
    MonotonicDeque<double> deque(mode);
    std::vector<double> out;
    out.reserve(times.size());
    std::size_t j = 0;
    for (double s : times) {
      const double upper = s + hi;
      while (j < ctimes.size() && ctimes[j] <= upper) {
        deque.push(ctimes[j], cvals[j]);
        ++j;
      }
      deque.evict_before(s + lo);
      out.push_back(deque.empty() ? identity : deque.front().value);
    }
    if (stats_) {
      stats_->peak_deque_entries += deque.peak_size();
      stats_->window_passes += 1;
    }
    return out;
  }

  std::vector<double> until(const node::Until& n, std::span<const double> times) {
    const double a = n.interval.lower, b = n.interval.upper_or_inf();
    auto ctimes = child_times(times, {0.0, a, b});
    auto keep = eval(n.lhs, ctimes);
    auto reach = eval(n.rhs, ctimes);
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
      double best = -kInf;
      double running = kInf;
      auto j = static_cast<std::size_t>(std::lower_bound(ctimes.begin(), ctimes.end(), t) -
                                        ctimes.begin());
      for (; j < ctimes.size() && ctimes[j] <= t + b; ++j) {
        running = std::min(running, keep[j]);
        if (ctimes[j] >= t + a) best = std::max(best, std::min(reach[j], running));
        if (running <= best) break;
      }
      out.push_back(best);
    }
    return out;
  }

  std::vector<double> since(const node::Since& n, std::span<const double> times) {
    const double a = n.interval.lower, b = n.interval.upper_or_inf();
    auto ctimes = child_times(times, {-b, -a, 0.0});
    auto keep = eval(n.lhs, ctimes);
    auto reach = eval(n.rhs, ctimes);
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
      double best = -kInf;
      double running = kInf;
      auto end = std::upper_bound(ctimes.begin(), ctimes.end(), t) - ctimes.begin();
      for (auto j = end - 1; j >= 0 && ctimes[static_cast<std::size_t>(j)] >= t - b; --j) {
        auto k = static_cast<std::size_t>(j);
        running = std::min(running, keep[k]);
        if (ctimes[k] <= t - a) best = std::max(best, std::min(reach[k], running));
        if (running <= best) break;
      }
      out.push_back(best);
    }
    return out;
  }

  std::vector<double> next(const node::Next& n, std::span<const double> times) {
    std::vector<double> targets;
    std::vector<std::ptrdiff_t> slot(times.size(), -1);
    for (std::size_t i = 0; i < times.size(); ++i) {
      auto it = std::upper_bound(grid_.begin(), grid_.end(), times[i]);
      if (it == grid_.end()) continue;
      if (targets.empty() || targets.back() != *it) targets.push_back(*it);
      slot[i] = static_cast<std::ptrdiff_t>(targets.size()) - 1;
    }
    auto vals = eval(n.child, targets);
    std::vector<double> out(times.size(), -kInf);
    for (std::size_t i = 0; i < times.size(); ++i)
      if (slot[i] >= 0) out[i] = vals[static_cast<std::size_t>(slot[i])];
    return out;
  }

  const Trace& trace_;
  std::vector<double> grid_;
  bool dense_;
  EvalStats* stats_;
};

bool tail_inconclusive(double reach, std::size_t depth, std::span<const double> grid,
                       std::size_t index, double t) {
  if (!(t + reach <= grid.back())) return true;
  return depth > 0 && index + depth >= grid.size();
}

}  // namespace

std::vector<double> evaluation_grid(const Formula& f, const Trace& x) {
  auto vars = free_variables(f);
  std::vector<std::string> names(vars.begin(), vars.end());
  for (const auto& v : names) {
    if (!x.has_variable(v)) {
      throw SignalError(SignalError::Kind::UnknownVariable, "unknown variable '" + v + "'");
    }
  }
  auto grid = x.timeline(names);
  if (grid.empty()) throw SignalError(SignalError::Kind::OutOfRange, "trace has no samples");
  if (x.semantics() == TimeSemantics::Dense && names.size() > 1) {
    // Interpolation needs every variable: keep the common sample range.
    double lo = grid.front(), hi = grid.back();
    for (const auto& v : names) {
      const Series& s = x.series(v);
      lo = std::max(lo, s.first_time());
      hi = std::min(hi, s.last_time());
    }
    std::erase_if(grid, [&](double t) { return t < lo || t > hi; });
    if (grid.empty()) {
      throw SignalError(SignalError::Kind::OutOfRange,
                        "the sample ranges of the formula's variables do not overlap");
    }
  }
  return grid;
}

Robustness eval_robustness(const Formula& f, const Trace& x, double t,
                           const RobustnessOptions& options) {
  auto grid = evaluation_grid(f, x);
  std::size_t index = 0;
  if (x.semantics() == TimeSemantics::Discrete) {
    auto it = std::lower_bound(grid.begin(), grid.end(), t);
    if (it == grid.end() || *it != t) {
      throw SignalError(SignalError::Kind::NoSample,
                        "discrete evaluation time t=" + format_number(t) + " is not a sample timestamp");
    }
    index = static_cast<std::size_t>(it - grid.begin());
  } else {
    if (t < grid.front() || t > grid.back()) {
      throw SignalError(SignalError::Kind::OutOfRange,
                        "evaluation time t=" + format_number(t) + " is outside the trace");
    }
    index = static_cast<std::size_t>(std::upper_bound(grid.begin(), grid.end(), t) - grid.begin()) - 1;
  }
  if (options.horizon == HorizonPolicy::Strict &&
      tail_inconclusive(future_reach(f), next_depth(f), grid, index, t)) {
    throw RobustnessError("window at t=" + format_number(t) + " extends past the trace horizon");
  }
  Evaluator ev(x, std::move(grid), nullptr);
  const double at[] = {t};
  return ev.eval(f, at).front();
}

std::vector<RobustnessSample> eval_all(const Formula& f, const Trace& x,
                                       const RobustnessOptions& options, EvalStats* stats) {
  auto grid = evaluation_grid(f, x);
  const double reach = future_reach(f);
  const std::size_t depth = next_depth(f);
  Evaluator ev(x, grid, stats);
  auto rho = ev.eval(f, grid);
  std::vector<RobustnessSample> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    bool tail = tail_inconclusive(reach, depth, grid, i, grid[i]);
    if (tail && options.horizon == HorizonPolicy::Strict) break;
    out.push_back({grid[i], rho[i], tail});
  }
  return out;
}

}  // namespace prstl
