// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "prstl/formula.hpp"
#include "prstl/monitor.hpp"
#include "prstl/robustness.hpp"

namespace prstl {

/// Version stamped into every JSON record; bump on incompatible changes.
inline constexpr int kRecordSchemaVersion = 1;

/// One-line JSON objects (no trailing newline). Infinite robustness is
/// written as the strings "inf" / "-inf".
std::string robustness_record(const RobustnessSample& sample);
std::string probability_record(const ProbabilityRecord& record);

/// AST as JSON: every node has "kind"; operators carry "children", temporal
/// nodes an "interval" {lower, upper|null}, predicates "op", "lhs", "rhs".
std::string formula_to_json(const Formula& f);

}  // namespace prstl
