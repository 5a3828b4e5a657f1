// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "prstl/detail/overloaded.hpp"
#include "prstl/error.hpp"
#include "prstl/formula.hpp"

namespace prstl {

using detail::overloaded;

namespace {

std::string describe(ParseError::Kind kind, std::size_t position, const std::string& detail,
                     const std::vector<std::string>& expected) {
  std::string head;
  switch (kind) {
    case ParseError::Kind::Syntax: head = "syntax error"; break;
    case ParseError::Kind::Interval: head = "interval error"; break;
    case ParseError::Kind::Probability: head = "probability error"; break;
  }
  std::string msg = head + " at position " + std::to_string(position) + ": " + detail;
  if (!expected.empty()) {
    msg += " (expected one of:";
    for (const auto& e : expected) msg += " " + e;
    msg += ")";
  }
  return msg;
}

}  // namespace

ParseError::ParseError(Kind kind, std::size_t position, std::string detail,
                       std::vector<std::string> expected)
    : Error(describe(kind, position, detail, expected)),
      kind_(kind),
      position_(position),
      detail_(std::move(detail)),
      expected_(std::move(expected)) {}

Interval::Interval(double lower_, std::optional<double> upper_) : lower(lower_), upper(upper_) {
  if (!std::isfinite(lower) || lower < 0.0) {
    throw std::invalid_argument("interval lower bound must be finite and non-negative");
  }
  if (upper) {
    if (!std::isfinite(*upper)) throw std::invalid_argument("interval upper bound must be finite");
    if (*upper < lower) throw std::invalid_argument("interval lower bound exceeds upper bound");
  }
}

Formula Formula::top() { return Formula(std::make_shared<const Node>(node::Top{})); }
Formula Formula::bottom() { return Formula(std::make_shared<const Node>(node::Bottom{})); }

Formula Formula::predicate(Expression lhs, Comparison op, Expression rhs) {
  return Formula(
      std::make_shared<const Node>(node::Predicate{std::move(lhs), op, std::move(rhs)}));
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(node::Not{std::move(f)}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(node::And{std::move(lhs), std::move(rhs)}));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(node::Or{std::move(lhs), std::move(rhs)}));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(node::Implies{std::move(lhs), std::move(rhs)}));
}

Formula Formula::always(Interval i, Formula f) {
  return Formula(std::make_shared<const Node>(node::Always{i, std::move(f)}));
}

Formula Formula::eventually(Interval i, Formula f) {
  return Formula(std::make_shared<const Node>(node::Eventually{i, std::move(f)}));
}

Formula Formula::until(Interval i, Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(node::Until{i, std::move(lhs), std::move(rhs)}));
}

Formula Formula::next(Formula f) {
  return Formula(std::make_shared<const Node>(node::Next{std::move(f)}));
}

Formula Formula::historically(Interval i, Formula f) {
  return Formula(std::make_shared<const Node>(node::Historically{i, std::move(f)}));
}

Formula Formula::once(Interval i, Formula f) {
  return Formula(std::make_shared<const Node>(node::Once{i, std::move(f)}));
}

Formula Formula::since(Interval i, Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(node::Since{i, std::move(lhs), std::move(rhs)}));
}

Formula Formula::probability(Comparison op, double threshold, Formula f) {
  if (!is_order_comparison(op)) {
    throw std::invalid_argument("probability operators admit only <, <=, >, >=");
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("probability threshold must lie in [0, 1]");
  }
  return Formula(std::make_shared<const Node>(node::Probability{op, threshold, std::move(f)}));
}

bool operator==(const Formula& a, const Formula& b) {
  return a.node_ == b.node_ || *a.node_ == *b.node_;
}

namespace {

// Generic fold over the immediate children of a node.
template <class Fn>
void for_each_child(const Formula& f, Fn&& fn) {
  std::visit(overloaded{
                 [](const node::Top&) {},
                 [](const node::Bottom&) {},
                 [](const node::Predicate&) {},
                 [&](const node::Not& n) { fn(n.child); },
                 [&](const node::Next& n) { fn(n.child); },
                 [&](const node::Probability& n) { fn(n.child); },
                 [&]<class Tag>(const node::BooleanBinary<Tag>& n) {
                   fn(n.lhs);
                   fn(n.rhs);
                 },
                 [&]<class Tag>(const node::TemporalUnary<Tag>& n) { fn(n.child); },
                 [&]<class Tag>(const node::TemporalBinary<Tag>& n) {
                   fn(n.lhs);
                   fn(n.rhs);
                 },
             },
             f.node());
}

void collect(const Formula& f, std::set<std::string>& out) {
  if (const auto* p = f.as<node::Predicate>()) {
    collect_variables(p->lhs, out);
    collect_variables(p->rhs, out);
    return;
  }
  for_each_child(f, [&](const Formula& c) { collect(c, out); });
}

double max_child(const Formula& f, double (*measure)(const Formula&)) {
  double best = 0.0;
  for_each_child(f, [&](const Formula& c) { best = std::max(best, measure(c)); });
  return best;
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  collect(f, out);
  return out;
}

bool contains_probability(const Formula& f) {
  if (f.as<node::Probability>()) return true;
  bool found = false;
  for_each_child(f, [&](const Formula& c) { found = found || contains_probability(c); });
  return found;
}

double future_reach(const Formula& f) {
  double inner = max_child(f, &future_reach);
  if (const auto* n = f.as<node::Always>()) return n->interval.upper_or_inf() + inner;
  if (const auto* n = f.as<node::Eventually>()) return n->interval.upper_or_inf() + inner;
  if (const auto* n = f.as<node::Until>()) return n->interval.upper_or_inf() + inner;
  return inner;
}

double past_reach(const Formula& f) {
  double inner = max_child(f, &past_reach);
  if (const auto* n = f.as<node::Historically>()) return n->interval.upper_or_inf() + inner;
  if (const auto* n = f.as<node::Once>()) return n->interval.upper_or_inf() + inner;
  if (const auto* n = f.as<node::Since>()) return n->interval.upper_or_inf() + inner;
  return inner;
}

std::size_t next_depth(const Formula& f) {
  std::size_t inner = 0;
  for_each_child(f, [&](const Formula& c) { inner = std::max(inner, next_depth(c)); });
  return f.as<node::Next>() ? inner + 1 : inner;
}

}  // namespace prstl
