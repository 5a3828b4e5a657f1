// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "prstl/formula.hpp"
#include "prstl/signal.hpp"

namespace prstl {

/// Discrete-time benchmark formulas phi1..phi5 over unit-spaced samples.
/// `bound_scale` multiplies every interval bound.
std::string bench_formula(std::string_view preset, double bound_scale = 1.0);
std::vector<std::string> bench_presets();

/// Synthetic unit-spaced trace with the preset's variables: x uniform on
/// [0, 20], p and q uniform on [-1, 1].
Trace bench_trace(std::string_view preset, std::size_t samples, std::uint64_t seed);

struct BenchResult {
  std::string preset;
  std::string formula;
  std::size_t samples;
  std::size_t repeats;
  double mean_seconds;
  double std_seconds;
  double samples_per_second;
  /// Peak deque entries summed over the formula's temporal operators.
  std::size_t peak_deque_entries;
};

/// Times eval_all over a fresh synthetic trace `repeats` times.
BenchResult run_bench(std::string_view preset, std::size_t samples, std::size_t repeats,
                      std::uint64_t seed, double bound_scale = 1.0);

}  // namespace prstl
