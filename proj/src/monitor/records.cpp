// SPDX-License-Identifier: Apache-2.0

#include "prstl/records.hpp"

#include <cmath>

#include <json.hpp>

#include "prstl/detail/overloaded.hpp"

namespace prstl {

using detail::overloaded;
using Json = nlohmann::ordered_json;

namespace {

Json extended(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json expression_json(const Expression& e) {
  return std::visit(overloaded{
                        [](const expr::Variable& v) {
                          return Json{{"kind", "variable"}, {"name", v.name}};
                        },
                        [](const expr::Constant& c) {
                          return Json{{"kind", "constant"}, {"value", c.value}};
                        },
                        [](const expr::Binary& b) {
                          return Json{{"kind", "binary"},
                                      {"op", to_string(b.op)},
                                      {"children", {expression_json(b.lhs), expression_json(b.rhs)}}};
                        },
                        [](const expr::Call& c) {
                          Json args = Json::array();
                          for (const auto& a : c.args) args.push_back(expression_json(a));
                          return Json{{"kind", "call"}, {"fn", to_string(c.fn)}, {"children", args}};
                        },
                    },
                    e.node());
}

Json interval_json(const Interval& i) {
  Json j{{"lower", i.lower}};
  j["upper"] = i.upper ? Json(*i.upper) : Json(nullptr);
  return j;
}

Json formula_json(const Formula& f);

Json unary(const char* kind, const Formula& child) {
  return Json{{"kind", kind}, {"children", {formula_json(child)}}};
}
Json binary(const char* kind, const Formula& a, const Formula& b) {
  return Json{{"kind", kind}, {"children", {formula_json(a), formula_json(b)}}};
}
Json temporal(const char* kind, const Interval& i, std::initializer_list<const Formula*> kids) {
  Json children = Json::array();
  for (const Formula* k : kids) children.push_back(formula_json(*k));
  return Json{{"kind", kind}, {"interval", interval_json(i)}, {"children", children}};
}

Json formula_json(const Formula& f) {
  return std::visit(
      overloaded{
          [](const node::Top&) { return Json{{"kind", "true"}}; },
          [](const node::Bottom&) { return Json{{"kind", "false"}}; },
          [](const node::Predicate& p) {
            return Json{{"kind", "predicate"},
                        {"op", to_string(p.op)},
                        {"lhs", expression_json(p.lhs)},
                        {"rhs", expression_json(p.rhs)}};
          },
          [](const node::Not& n) { return unary("not", n.child); },
          [](const node::Next& n) { return unary("next", n.child); },
          [](const node::And& n) { return binary("and", n.lhs, n.rhs); },
          [](const node::Or& n) { return binary("or", n.lhs, n.rhs); },
          [](const node::Implies& n) { return binary("implies", n.lhs, n.rhs); },
          [](const node::Always& n) { return temporal("always", n.interval, {&n.child}); },
          [](const node::Eventually& n) { return temporal("eventually", n.interval, {&n.child}); },
          [](const node::Historically& n) {
            return temporal("historically", n.interval, {&n.child});
          },
          [](const node::Once& n) { return temporal("once", n.interval, {&n.child}); },
          [](const node::Until& n) { return temporal("until", n.interval, {&n.lhs, &n.rhs}); },
          [](const node::Since& n) { return temporal("since", n.interval, {&n.lhs, &n.rhs}); },
          [](const node::Probability& n) {
            return Json{{"kind", "prob"},
                        {"op", to_string(n.op)},
                        {"threshold", n.threshold},
                        {"children", {formula_json(n.child)}}};
          },
      },
      f.node());
}

}  // namespace

std::string robustness_record(const RobustnessSample& s) {
  Json j{{"schema_version", kRecordSchemaVersion},
         {"type", "robustness"},
         {"time", s.time},
         {"rho", extended(s.rho)},
         {"inconclusive", s.inconclusive}};
  return j.dump();
}

std::string probability_record(const ProbabilityRecord& r) {
  Json j{{"schema_version", kRecordSchemaVersion},
         {"type", "probability"},
         {"time", r.time},
         {"eval_time", r.eval_time},
         {"estimate", r.estimate.estimate},
         {"lower", r.estimate.lower},
         {"upper", r.estimate.upper},
         {"confidence", r.estimate.confidence},
         {"samples", r.estimate.samples},
         {"successes", r.estimate.successes},
         {"verdict", to_string(r.verdict)},
         {"inconclusive_tail", r.inconclusive_tail}};
  return j.dump();
}

std::string formula_to_json(const Formula& f) {
  Json j{{"schema_version", kRecordSchemaVersion}, {"type", "formula"},
         {"text", format_formula(f)}, {"ast", formula_json(f)}};
  return j.dump();
}

}  // namespace prstl
