// SPDX-License-Identifier: Apache-2.0
//
// Acceptance checks 1-10. Prints one PASS/FAIL line per criterion followed
// by indented details; exits non-zero when any selected criterion fails.
//
//   prstl_acceptance                 all criteria
//   prstl_acceptance --criterion 7   one criterion

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "prstl/bench.hpp"
#include "prstl/monotonic_deque.hpp"
#include "prstl/noise.hpp"
#include "prstl/robustness.hpp"
#include "prstl/splitting.hpp"
#include "prstl/validation.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace {

using namespace prstl;

// Tolerances and budgets.
constexpr double kDequeSeconds = 10.0;
constexpr double kSoundnessSeconds = 60.0;
constexpr double kCoverageTolerancePp = 1.0;
constexpr double kChiSquaredFloor = 0.001;
constexpr double kCoverageSeconds = 600.0;
constexpr double kConservativeSlackPp = 0.5;
constexpr double kSprtMaxRate = 0.06;
constexpr double kSprtSeconds = 120.0;
constexpr double kScalingRatioLow = 5.0, kScalingRatioHigh = 20.0;
constexpr double kBoundChangeMax = 0.25;
constexpr double kMinThroughput = 1e6;
constexpr std::size_t kDequeSlack = 2;
constexpr double kAmsFactor = 2.0;
constexpr std::size_t kAmsSimulationBudget = 100000;
constexpr double kAmsPassFraction = 0.9;
constexpr double kAmsAgreementSigmas = 3.0;
constexpr double kGmmMeanTol = 0.2, kGmmWeightTol = 0.1, kGmmMonotoneTol = 1e-10;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void note(const std::string& line) { details.push_back(line); }
  void require(bool ok, const std::string& line) {
    pass = pass && ok;
    details.push_back((ok ? "ok    " : "FAIL  ") + line);
  }
};

template <class... Args>
std::string str(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

std::string pct(double v, int digits = 2) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << 100.0 * v << "%";
  return os.str();
}

// 1 ------------------------------------------------------------------------
Outcome deque_correctness() {
  Outcome out;
  auto start = Clock::now();
  std::mt19937_64 rng(20240101);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 500)(rng);
    std::vector<TimedValue> s;
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s.push_back({t, std::uniform_real_distribution<double>(-10, 10)(rng)});
      t += std::uniform_int_distribution<int>(1, 8)(rng) * 0.125;
    }
    double w = std::uniform_int_distribution<int>(1, 200)(rng) * 0.125;
    auto mode = trial % 2 ? ExtremumMode::Max : ExtremumMode::Min;
    mismatches += sliding_extremum(s, w, mode) != oracle::naive_window(s, w, mode);
  }
  double elapsed = seconds_since(start);
  out.require(mismatches == 0, str("1000 streams (n <= 500) against the naive filter: ",
                                   mismatches, " mismatching streams"));
  out.require(elapsed < kDequeSeconds, str("runtime ", elapsed, " s < ", kDequeSeconds, " s"));
  return out;
}

// 2 ------------------------------------------------------------------------
Outcome robustness_soundness() {
  Outcome out;
  auto start = Clock::now();
  std::mt19937_64 rng(77);
  gen::FormulaOptions opt;
  opt.max_depth = 5;
  opt.equality = false;
  opt.partial_functions = false;
  std::size_t decided = 0, disagreements = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Formula f = gen::random_formula(rng, opt);
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 50)(rng);
    Trace x = gen::random_trace(rng, opt.variables, n, trial % 2 == 0, trial % 3 == 0);
    auto got = eval_all(f, x);
    auto grid = evaluation_grid(f, x);
    auto sat = oracle::satisfies_all(f, x, grid);
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (got[i].rho == 0.0) continue;
      ++decided;
      if ((got[i].rho > 0.0) != sat[i]) {
        if (disagreements++ == 0) {
          out.note(str("first disagreement: ", format_formula(f), " at t=", grid[i]));
        }
      }
    }
  }
  double elapsed = seconds_since(start);
  out.require(disagreements == 0, str("500 formulas (depth <= 5), ", decided,
                                       " decided instants: ", disagreements, " sign disagreements"));
  out.require(decided > 1000, str("enough non-zero robustness values to be meaningful (", decided, ")"));
  out.require(elapsed < kSoundnessSeconds, str("runtime ", elapsed, " s < ", kSoundnessSeconds, " s"));
  return out;
}

// 3, 4 ---------------------------------------------------------------------
const std::vector<double> kGridP{0.1, 0.3, 0.5, 0.7, 0.9};
const std::vector<double> kGridConfidence{0.80, 0.90, 0.95, 0.99};

// Published observed coverage, row-major over kGridP x kGridConfidence.
const double kPublishedCoverage[5][4] = {
    {0.803, 0.904, 0.953, 0.991}, {0.797, 0.899, 0.952, 0.991}, {0.801, 0.898, 0.949, 0.992},
    {0.802, 0.903, 0.951, 0.990}, {0.799, 0.902, 0.954, 0.990}};

Outcome wilson_coverage() {
  Outcome out;
  auto start = Clock::now();
  auto cells = coverage_grid(kGridP, kGridConfidence, 100, 10000, IntervalMethod::Wilson, 2024);
  std::size_t within = 0, chi_ok = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    double published = kPublishedCoverage[i / 4][i % 4];
    double exact = oracle::exact_coverage(100, c.p, [&](std::size_t k, std::size_t n) {
      auto ci = wilson_interval(k, n, c.confidence);
      return std::pair{ci.lower, ci.upper};
    });
    double diff_pp = 100.0 * (c.coverage - published);
    bool ok = std::abs(diff_pp) <= kCoverageTolerancePp;
    within += ok;
    chi_ok += c.p_value > kChiSquaredFloor;
    out.note(str(ok ? "      " : "off   ", "p=", c.p, " ", pct(c.confidence, 0), ": observed ",
                 pct(c.coverage), ", published ", pct(published, 1), ", exact binomial ",
                 pct(exact), ", chi2 p=", std::setprecision(3), c.p_value));
  }
  double elapsed = seconds_since(start);
  out.require(within == cells.size(), str(within, "/", cells.size(), " cells within +-",
                                          kCoverageTolerancePp, " pp of the published table"));
  out.require(chi_ok == cells.size(), str(chi_ok, "/", cells.size(), " chi-squared p-values > ",
                                          kChiSquaredFloor));
  out.require(elapsed < kCoverageSeconds, str("runtime ", elapsed, " s < ", kCoverageSeconds, " s"));
  return out;
}

Outcome clopper_pearson_conservatism() {
  Outcome out;
  auto cells = coverage_grid(kGridP, kGridConfidence, 100, 10000, IntervalMethod::ClopperPearson, 2025);
  std::size_t ok_cells = 0;
  double worst = 1e9;
  for (const auto& c : cells) {
    double margin_pp = 100.0 * (c.coverage - c.confidence);
    worst = std::min(worst, margin_pp);
    ok_cells += margin_pp >= -kConservativeSlackPp;
  }
  out.require(ok_cells == cells.size(),
              str(ok_cells, "/", cells.size(), " cells with coverage >= nominal - ",
                  kConservativeSlackPp, " pp (worst margin ", std::setprecision(3), worst, " pp)"));
  return out;
}

// 5 ------------------------------------------------------------------------
Outcome sprt_validation() {
  Outcome out;
  auto start = Clock::now();
  SprtConfig cfg;  // H0 p <= 0.3, H1 p >= 0.5, alpha = beta = 0.05
  auto rates = sprt_error_rates(cfg, 5000, 5);
  double elapsed = seconds_since(start);
  out.require(rates.type_one <= kSprtMaxRate, str("type I ", pct(rates.type_one), " <= ", pct(kSprtMaxRate, 1),
                                                  " (mean samples ", rates.mean_samples_h0, ")"));
  out.require(rates.type_two <= kSprtMaxRate, str("type II ", pct(rates.type_two), " <= ", pct(kSprtMaxRate, 1),
                                                  " (mean samples ", rates.mean_samples_h1, ")"));
  out.require(elapsed < kSprtSeconds, str("runtime ", elapsed, " s < ", kSprtSeconds, " s"));
  return out;
}

// 6 ------------------------------------------------------------------------
Outcome chernoff_sizing() {
  Outcome out;
  std::size_t n = required_samples(0.01, 0.05);
  out.require(n == 18445, str("required_samples(0.01, 0.05) = ", n));
  auto check = chernoff_check(0.5, 0.05, 0.1, 2000, 6);
  out.require(check.exceed_fraction <= 0.1,
              str("N = ", check.samples, " at p=0.5, eps=0.05: |p_hat - p| > eps in ",
                  pct(check.exceed_fraction), " of 2000 trials (<= 10%)"));
  return out;
}

// 7 ------------------------------------------------------------------------
Outcome linear_scaling() {
  Outcome out;
  auto small = run_bench("phi1", 100000, 5, 1);
  auto large = run_bench("phi1", 1000000, 5, 1);
  auto wide = run_bench("phi1", 1000000, 5, 1, 2.0);
  double ratio = large.mean_seconds / small.mean_seconds;
  out.require(ratio >= kScalingRatioLow && ratio <= kScalingRatioHigh,
              str("time(1e6) / time(1e5) = ", ratio, " in [", kScalingRatioLow, ", ",
                  kScalingRatioHigh, "] (", small.mean_seconds, " s, ", large.mean_seconds, " s)"));
  double change = std::abs(wide.mean_seconds / large.mean_seconds - 1.0);
  out.require(change < kBoundChangeMax, str("doubling the window bound changes time by ",
                                            pct(change, 1), " (< ", pct(kBoundChangeMax, 0), ")"));
  // always[0,50] over unit-spaced samples: a window holds 51 samples.
  out.require(large.peak_deque_entries <= 51 + kDequeSlack,
              str("peak deque entries ", large.peak_deque_entries, " <= window 51 + ", kDequeSlack));
  out.require(wide.peak_deque_entries <= 101 + kDequeSlack,
              str("doubled bound: peak deque entries ", wide.peak_deque_entries, " <= window 101 + ",
                  kDequeSlack));
  out.require(large.samples_per_second >= kMinThroughput,
              str("throughput ", large.samples_per_second, " samples/s >= ", kMinThroughput));
  return out;
}

// 8 ------------------------------------------------------------------------
Outcome rare_event_splitting() {
  Outcome out;
  const double truth = 0.5 * std::erfc(4.0 / std::sqrt(2.0));
  GaussianTailModel model;
  int good = 0;
  const int runs = 20;
  std::size_t max_sims = 0;
  for (int r = 0; r < runs; ++r) {
    auto res = run_ams(model, AmsConfig{4.0, 1000, 0.5, static_cast<std::uint64_t>(1000 + r)});
    max_sims = std::max(max_sims, res.simulations);
    good += res.estimate >= truth / kAmsFactor && res.estimate <= truth * kAmsFactor &&
            res.simulations <= kAmsSimulationBudget && !res.capped;
  }
  out.require(good >= kAmsPassFraction * runs,
              str(good, "/", runs, " runs within a factor ", kAmsFactor, " of ", truth,
                  " using <= ", kAmsSimulationBudget, " simulations (max used ", max_sims, ")"));

  // Agreement with crude Monte Carlo where the event is common enough.
  const double c = 2.3263478740408408;  // upper 1% point of N(0, 1)
  std::vector<double> est;
  for (int r = 0; r < runs; ++r)
    est.push_back(run_ams(model, AmsConfig{c, 1000, 0.5, static_cast<std::uint64_t>(5000 + r)}).estimate);
  double mean = 0, var = 0;
  for (double e : est) mean += e / runs;
  for (double e : est) var += (e - mean) * (e - mean) / (runs - 1);
  const std::size_t draws = 200000;
  CounterRng rng(99, 7);
  std::normal_distribution<double> z;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < draws; ++i) hits += z(rng) >= c;
  double p_mc = static_cast<double>(hits) / draws;
  double se = std::sqrt(var / runs + p_mc * (1 - p_mc) / draws);
  out.require(std::abs(mean - p_mc) <= kAmsAgreementSigmas * se,
              str("p ~ 0.01: splitting mean ", mean, " vs crude MC ", p_mc, " (", draws,
                  " draws), |diff| <= ", kAmsAgreementSigmas, " x ", se));
  return out;
}

// 9 ------------------------------------------------------------------------
Outcome gmm_recovery() {
  Outcome out;
  std::mt19937_64 gen(123456);
  std::normal_distribution<double> left(-2.0, 0.5), right(2.0, 0.5);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> r;
  for (int i = 0; i < 500; ++i) r.push_back(coin(gen) ? right(gen) : left(gen));
  auto m = std::get<MixtureNoise>(fit_gmm(r, Interaction::Additive).model());
  std::size_t lo = m.means[0] < m.means[1] ? 0 : 1, hi = 1 - lo;
  out.require(std::abs(m.means[lo] + 2) <= kGmmMeanTol && std::abs(m.means[hi] - 2) <= kGmmMeanTol,
              str("means ", m.means[lo], ", ", m.means[hi], " within +-", kGmmMeanTol, " of -2, 2"));
  out.require(std::abs(m.weights[lo] - 0.5) <= kGmmWeightTol &&
                  std::abs(m.weights[hi] - 0.5) <= kGmmWeightTol,
              str("weights ", m.weights[lo], ", ", m.weights[hi], " within +-", kGmmWeightTol, " of 0.5"));
  std::size_t drops = 0;
  for (std::size_t i = 1; i < m.log_likelihood.size(); ++i)
    drops += m.log_likelihood[i] < m.log_likelihood[i - 1] - kGmmMonotoneTol;
  out.require(drops == 0, str("log-likelihood non-decreasing over ", m.log_likelihood.size(),
                              " iterations (", drops, " drops)"));
  return out;
}

// 10 -----------------------------------------------------------------------
Outcome determinism() {
  Outcome out;
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("prstl_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  {
    std::ofstream trace(dir / "trace.csv");
    trace << "time,variable,value\n";
    std::mt19937_64 g(3);
    for (int t = 0; t < 200; ++t) {
      trace << t << ",x," << 5 + std::sin(0.1 * t) << "\n";
      trace << t << ",y," << std::normal_distribution<double>(1, 0.3)(g) << "\n";
    }
    std::ofstream noise(dir / "noise.json");
    noise << to_json(NoiseModel(MixtureNoise{{0.6, 0.4}, {0.0, 0.3}, {0.04, 0.1}, {}, 0},
                                Interaction::Additive));
  }
  auto run = [&](const std::string& formula, bool noise, std::size_t workers) {
    cli::MonitorArgs args;
    args.formula = formula;
    args.trace = (dir / "trace.csv").string();
    if (noise) args.noise = (dir / "noise.json").string();
    args.samples = 500;
    args.seed = 42;
    args.workers = workers;
    std::ostringstream os;
    cli::cmd_monitor(args, os);
    return os.str();
  };
  const std::string prob = "P>=0.6((eventually[0,4](x > 5)) and (historically[0,2](y < 1.5)))";
  const std::string plain = "always[0,3](x > 4.5)";
  auto a = run(prob, true, 1), b = run(prob, true, 1), c = run(prob, true, 4);
  out.require(!a.empty() && a == b, str("probabilistic monitor, two runs: ", a.size(), " bytes, identical = ", a == b));
  out.require(a == c, "probabilistic monitor, 1 vs 4 workers: identical");
  auto p = run(plain, false, 1), q = run(plain, false, 1);
  out.require(!p.empty() && p == q, "robustness monitor, two runs: identical");
  fs::remove_all(dir);
  return out;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "deque correctness", deque_correctness},
    {2, "robustness soundness", robustness_soundness},
    {3, "Wilson coverage reproduction", wilson_coverage},
    {4, "Clopper-Pearson conservatism", clopper_pearson_conservatism},
    {5, "SPRT error rates", sprt_validation},
    {6, "Chernoff sizing", chernoff_sizing},
    {7, "linear scaling", linear_scaling},
    {8, "rare-event splitting", rare_event_splitting},
    {9, "GMM recovery", gmm_recovery},
    {10, "determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prstl acceptance checks"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "Criterion number(s), 1-10")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (const auto& c : kCriteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, str("exception: ", e.what()));
    }
    all_pass = all_pass && o.pass;
    std::cout << "criterion " << std::setw(2) << c.id << " " << (o.pass ? "PASS" : "FAIL") << "  "
              << c.name << "  (" << std::fixed << std::setprecision(1) << seconds_since(start)
              << " s)" << std::defaultfloat << "\n";
    for (const auto& d : o.details) std::cout << "    " << d << "\n";
    std::cout.flush();
  }
  return all_pass ? 0 : 1;
}
