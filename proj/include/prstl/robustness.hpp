// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "prstl/formula.hpp"
#include "prstl/signal.hpp"

namespace prstl {

/// Extended-real robustness margin. ±inf come from true/false, empty
/// windows and `next` past the last sample; NaN never occurs.
using Robustness = double;

inline constexpr Robustness kRobustTop = std::numeric_limits<double>::infinity();
inline constexpr Robustness kRobustBottom = -std::numeric_limits<double>::infinity();

enum class HorizonPolicy {
  /// Windows are clipped to the available samples; results whose full
  /// window runs past the last sample are flagged inconclusive.
  Clip,
  /// Any evaluation whose window runs past the last sample is an error.
  Strict,
};

struct RobustnessOptions {
  HorizonPolicy horizon = HorizonPolicy::Clip;
};

struct RobustnessSample {
  double time;
  Robustness rho;
  bool inconclusive;
};

/// Per-call bookkeeping for the memory properties of the window passes.
struct EvalStats {
  /// Sum over temporal nodes of the peak monotonic deque length.
  std::size_t peak_deque_entries = 0;
  /// Number of temporal operators evaluated (one window pass each).
  std::size_t window_passes = 0;
};

/// Robustness of a probability-free formula at time `t`.
///
/// Discrete traces are evaluated at sample timestamps only; dense traces
/// interpolate piecewise-linearly and add the window endpoints t+a, t+b to
/// the sample grid. Throws RobustnessError for probabilistic nodes and for
/// strict-horizon violations, SignalError / EvaluationError for data issues.
Robustness eval_robustness(const Formula& f, const Trace& x, double t,
                           const RobustnessOptions& options = {});

/// Robustness at every timestamp of the formula's variables (the trace's
/// timeline), computed bottom-up with one monotonic-deque pass per temporal
/// operator.
std::vector<RobustnessSample> eval_all(const Formula& f, const Trace& x,
                                       const RobustnessOptions& options = {},
                                       EvalStats* stats = nullptr);

/// The timestamps eval_all evaluates at.
std::vector<double> evaluation_grid(const Formula& f, const Trace& x);

}  // namespace prstl
