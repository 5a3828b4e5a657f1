// SPDX-License-Identifier: Apache-2.0

#include "prstl/signal.hpp"

#include <algorithm>
#include <cmath>

#include "prstl/error.hpp"
#include "prstl/formula.hpp"

namespace prstl {

void Series::append(double time, double value) {
  times_.push_back(time);
  values_.push_back(value);
}

std::optional<double> Series::exact(double t) const noexcept {
  auto ts = times();
  auto it = std::lower_bound(ts.begin(), ts.end(), t);
  if (it == ts.end() || *it != t) return std::nullopt;
  return values()[static_cast<std::size_t>(it - ts.begin())];
}

std::optional<double> Series::interpolate(double t) const noexcept {
  auto ts = times();
  auto vs = values();
  if (ts.empty() || t < ts.front() || t > ts.back()) return std::nullopt;
  auto it = std::lower_bound(ts.begin(), ts.end(), t);
  auto k = static_cast<std::size_t>(it - ts.begin());
  if (ts[k] == t) return vs[k];
  double t1 = ts[k - 1], t2 = ts[k];
  double v1 = vs[k - 1], v2 = vs[k];
  return v1 + (v2 - v1) * (t - t1) / (t2 - t1);
}

void Series::drop_before(double cutoff) {
  auto ts = times();
  auto it = std::lower_bound(ts.begin(), ts.end(), cutoff);
  auto keep_from = static_cast<std::size_t>(it - ts.begin());
  if (keep_from > 0 && (it == ts.end() || *it != cutoff)) --keep_from;
  head_ += keep_from;
  // Compact once the dead prefix outgrows the live part; amortized O(1).
  if (head_ > 64 && head_ > size()) {
    times_.erase(times_.begin(), times_.begin() + static_cast<std::ptrdiff_t>(head_));
    values_.erase(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(head_));
    head_ = 0;
  }
}

Trace::Trace(TimeSemantics semantics, std::optional<double> horizon)
    : semantics_(semantics), horizon_(horizon) {
  if (horizon_ && !(std::isfinite(*horizon_) && *horizon_ >= 0.0)) {
    throw SignalError(SignalError::Kind::Horizon, "trace horizon must be finite and non-negative");
  }
}

void Trace::append(std::string_view variable, double time, double value) {
  if (!std::isfinite(time) || time < 0.0) {
    throw SignalError(SignalError::Kind::NonFinite,
                      "sample time must be finite and non-negative for '" +
                          std::string(variable) + "'");
  }
  if (!std::isfinite(value)) {
    throw SignalError(SignalError::Kind::NonFinite,
                      "non-finite value for '" + std::string(variable) + "' at t=" +
                          format_number(time));
  }
  if (horizon_ && time > *horizon_) {
    throw SignalError(SignalError::Kind::Horizon,
                      "sample at t=" + format_number(time) + " lies past the horizon " +
                          format_number(*horizon_));
  }
  auto it = series_.find(variable);
  if (it == series_.end()) it = series_.emplace(std::string(variable), Series{}).first;
  Series& s = it->second;
  if (!s.empty() && time <= s.last_time()) {
    throw SignalError(SignalError::Kind::OutOfOrder,
                      "out-of-order sample for '" + std::string(variable) + "': t=" +
                          format_number(time) + " after t=" + format_number(s.last_time()));
  }
  s.append(time, value);
  if (retention_) s.drop_before(time - *retention_);
}

double Trace::value_at(std::string_view variable, double t) const {
  const Series& s = series(variable);
  if (s.empty()) {
    throw SignalError(SignalError::Kind::OutOfRange, "no samples for '" + std::string(variable) + "'");
  }
  if (semantics_ == TimeSemantics::Discrete) {
    if (auto v = s.exact(t)) return *v;
    throw SignalError(SignalError::Kind::NoSample,
                      "no sample of '" + std::string(variable) + "' at t=" + format_number(t));
  }
  if (auto v = s.interpolate(t)) return *v;
  throw SignalError(SignalError::Kind::OutOfRange,
                    "t=" + format_number(t) + " is outside the stored range [" +
                        format_number(s.first_time()) + ", " + format_number(s.last_time()) +
                        "] of '" + std::string(variable) + "'");
}

void Trace::set_retention(std::optional<double> bound) {
  if (bound && !(*bound >= 0.0)) {
    throw SignalError(SignalError::Kind::Horizon, "retention bound must be non-negative");
  }
  retention_ = bound;
  if (retention_) {
    for (auto& [name, s] : series_)
      if (!s.empty()) s.drop_before(s.last_time() - *retention_);
  }
}

void Trace::drop_before(double cutoff) {
  for (auto& [name, s] : series_) s.drop_before(cutoff);
}

bool Trace::has_variable(std::string_view variable) const {
  return series_.find(variable) != series_.end();
}

const Series& Trace::series(std::string_view variable) const {
  auto it = series_.find(variable);
  if (it == series_.end()) {
    throw SignalError(SignalError::Kind::UnknownVariable,
                      "unknown variable '" + std::string(variable) + "'");
  }
  return it->second;
}

std::vector<std::string> Trace::variables() const {
  std::vector<std::string> out;
  out.reserve(series_.size());
  for (const auto& [name, s] : series_) out.push_back(name);
  return out;
}

std::size_t Trace::retained_samples() const noexcept {
  std::size_t n = 0;
  for (const auto& [name, s] : series_) n += s.size();
  return n;
}

std::vector<double> Trace::timeline(std::span<const std::string> variables) const {
  std::vector<const Series*> picked;
  if (variables.empty()) {
    for (const auto& [name, s] : series_) picked.push_back(&s);
  } else {
    for (const auto& v : variables) picked.push_back(&series(v));
  }
  if (picked.size() == 1) {
    auto ts = picked.front()->times();
    return {ts.begin(), ts.end()};
  }
  std::vector<double> out;
  for (const Series* s : picked) {
    auto ts = s->times();
    std::vector<double> merged;
    merged.reserve(out.size() + ts.size());
    std::set_union(out.begin(), out.end(), ts.begin(), ts.end(), std::back_inserter(merged));
    out.swap(merged);
  }
  return out;
}

TraceEnsemble::TraceEnsemble(std::vector<Trace> members) : members_(std::move(members)) {
  if (members_.empty()) {
    throw SignalError(SignalError::Kind::Mismatch, "a trace ensemble needs at least one member");
  }
  const Trace& first = members_.front();
  auto vars = first.variables();
  for (const Trace& m : members_) {
    if (m.variables() != vars) {
      throw SignalError(SignalError::Kind::Mismatch, "ensemble members have different variables");
    }
    for (const auto& v : vars) {
      auto a = first.series(v).times();
      auto b = m.series(v).times();
      if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) {
        throw SignalError(SignalError::Kind::Mismatch,
                          "ensemble members have different timestamps for '" + v + "'");
      }
    }
  }
}

}  // namespace prstl
