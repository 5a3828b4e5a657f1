// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "prstl/error.hpp"
#include "prstl/smc.hpp"

namespace prstl {

void SprtConfig::validate() const {
  if (!(p0 > 0.0 && p0 < p1 && p1 < 1.0)) throw SmcError("SPRT needs 0 < p0 < p1 < 1");
  if (!(alpha > 0.0 && alpha < 0.5) || !(beta > 0.0 && beta < 0.5)) {
    throw SmcError("SPRT error bounds must lie in (0, 0.5)");
  }
  if (max_samples == 0) throw SmcError("SPRT sample cap must be at least 1");
}

std::string_view to_string(SprtOutcome o) noexcept {
  switch (o) {
    case SprtOutcome::AcceptH0: return "accept_H0";
    case SprtOutcome::AcceptH1: return "accept_H1";
    case SprtOutcome::Undecided: return "undecided";
  }
  return "?";
}

Sprt::Sprt(const SprtConfig& c) {
  c.validate();
  step_success_ = std::log(c.p1 / c.p0);
  step_failure_ = std::log((1.0 - c.p1) / (1.0 - c.p0));
  upper_ = std::log((1.0 - c.beta) / c.alpha);
  lower_ = std::log(c.beta / (1.0 - c.alpha));
  max_ = c.max_samples;
}

SprtOutcome Sprt::observe(bool success) {
  if (finished()) return outcome_;
  ++n_;
  lambda_ += success ? step_success_ : step_failure_;
  if (lambda_ >= upper_) outcome_ = SprtOutcome::AcceptH1;
  else if (lambda_ <= lower_) outcome_ = SprtOutcome::AcceptH0;
  return outcome_;
}

}  // namespace prstl
