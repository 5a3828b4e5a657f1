// SPDX-License-Identifier: Apache-2.0

#include "prstl/bench.hpp"

#include <chrono>
#include <cmath>

#include "prstl/error.hpp"
#include "prstl/random.hpp"
#include "prstl/robustness.hpp"

namespace prstl {

namespace {

std::string b(double v, double scale) { return format_number(v * scale); }

}  // namespace

std::vector<std::string> bench_presets() { return {"phi1", "phi2", "phi3", "phi4", "phi5"}; }

std::string bench_formula(std::string_view preset, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw Error("bound scale must be positive");
  if (preset == "phi1") return "always[0," + b(50, s) + "](x > 10)";
  if (preset == "phi2") return "eventually[0," + b(50, s) + "](x > 10)";
  if (preset == "phi3") return "always[0," + b(100, s) + "](eventually[0," + b(10, s) + "](p > 0))";
  if (preset == "phi4") return "(p > 0) implies (eventually[0," + b(20, s) + "](q > 0))";
  if (preset == "phi5") {
    return "always[0," + b(200, s) + "]((p > 0) and (eventually[" + b(5, s) + "," + b(15, s) +
           "](q > 0)))";
  }
  throw Error("unknown benchmark preset '" + std::string(preset) + "' (expected phi1..phi5)");
}

Trace bench_trace(std::string_view preset, std::size_t samples, std::uint64_t seed) {
  Formula f = parse_formula(bench_formula(preset));
  Trace trace(TimeSemantics::Discrete);
  std::uint32_t stream = 0;
  for (const auto& v : free_variables(f)) {
    CounterRng rng(seed, stream++, 0);
    const bool is_x = v == "x";
    for (std::size_t i = 0; i < samples; ++i) {
      double u = rng.uniform01();
      trace.append(v, static_cast<double>(i), is_x ? 20.0 * u : 2.0 * u - 1.0);
    }
  }
  return trace;
}

BenchResult run_bench(std::string_view preset, std::size_t samples, std::size_t repeats,
                      std::uint64_t seed, double bound_scale) {
  if (repeats == 0) throw Error("repeats must be at least 1");
  if (samples == 0) throw Error("samples must be at least 1");
  const std::string text = bench_formula(preset, bound_scale);
  const Formula f = parse_formula(text);
  const Trace trace = bench_trace(preset, samples, seed);
  std::vector<double> times;
  std::size_t peak = 0;
  volatile double sink = 0;
  for (std::size_t r = 0; r < repeats; ++r) {
    EvalStats stats;
    auto start = std::chrono::steady_clock::now();
    auto out = eval_all(f, trace, {}, &stats);
    auto stop = std::chrono::steady_clock::now();
    sink = sink + out.back().rho;
    times.push_back(std::chrono::duration<double>(stop - start).count());
    peak = std::max(peak, stats.peak_deque_entries);
  }
  double mean = 0;
  for (double t : times) mean += t;
  mean /= static_cast<double>(times.size());
  double var = 0;
  for (double t : times) var += (t - mean) * (t - mean);
  double sd = times.size() > 1 ? std::sqrt(var / static_cast<double>(times.size() - 1)) : 0.0;
  return {std::string(preset), text, samples, repeats, mean, sd,
          static_cast<double>(samples) / mean, peak};
}

}  // namespace prstl
