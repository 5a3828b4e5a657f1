// SPDX-License-Identifier: Apache-2.0

#include <charconv>
#include <system_error>

#include "prstl/detail/overloaded.hpp"
#include "prstl/formula.hpp"

namespace prstl {

using detail::overloaded;

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

namespace {

int precedence(const Expression& e) {
  if (const auto* b = e.as<expr::Binary>()) {
    return (b->op == BinaryOp::Add || b->op == BinaryOp::Sub) ? 1 : 2;
  }
  return 3;
}

void write(const Expression& e, std::string& out);

void write_operand(const Expression& e, bool parenthesize, std::string& out) {
  if (parenthesize) out += '(';
  write(e, out);
  if (parenthesize) out += ')';
}

void write(const Expression& e, std::string& out) {
  std::visit(overloaded{
                 [&](const expr::Variable& v) { out += v.name; },
                 [&](const expr::Constant& c) { out += format_number(c.value); },
                 [&](const expr::Binary& b) {
                   int p = precedence(e);
                   write_operand(b.lhs, precedence(b.lhs) < p, out);
                   out += ' ';
                   out += to_string(b.op);
                   out += ' ';
                   write_operand(b.rhs, precedence(b.rhs) <= p, out);
                 },
                 [&](const expr::Call& c) {
                   out += to_string(c.fn);
                   out += '(';
                   for (std::size_t i = 0; i < c.args.size(); ++i) {
                     if (i) out += ", ";
                     write(c.args[i], out);
                   }
                   out += ')';
                 },
             },
             e.node());
}

void write(const Interval& i, std::string& out) {
  out += '[';
  out += format_number(i.lower);
  out += ',';
  if (i.upper) {
    out += format_number(*i.upper);
    out += ']';
  } else {
    out += "inf)";
  }
}

void write(const Formula& f, std::string& out);

void write_group(const Formula& f, std::string& out) {
  out += '(';
  write(f, out);
  out += ')';
}

void write_unary(std::string_view keyword, const Interval* i, const Formula& child, std::string& out) {
  out += keyword;
  if (i) write(*i, out);
  write_group(child, out);
}

void write_binary(const Formula& lhs, std::string_view keyword, const Interval* i,
                  const Formula& rhs, std::string& out) {
  write_group(lhs, out);
  out += ' ';
  out += keyword;
  if (i) write(*i, out);
  out += ' ';
  write_group(rhs, out);
}

void write(const Formula& f, std::string& out) {
  std::visit(overloaded{
                 [&](const node::Top&) { out += "true"; },
                 [&](const node::Bottom&) { out += "false"; },
                 [&](const node::Predicate& p) {
                   write(p.lhs, out);
                   out += ' ';
                   out += to_string(p.op);
                   out += ' ';
                   write(p.rhs, out);
                 },
                 [&](const node::Not& n) { write_unary("not", nullptr, n.child, out); },
                 [&](const node::Next& n) { write_unary("next", nullptr, n.child, out); },
                 [&](const node::And& n) { write_binary(n.lhs, "and", nullptr, n.rhs, out); },
                 [&](const node::Or& n) { write_binary(n.lhs, "or", nullptr, n.rhs, out); },
                 [&](const node::Implies& n) {
                   write_binary(n.lhs, "implies", nullptr, n.rhs, out);
                 },
                 [&](const node::Always& n) { write_unary("always", &n.interval, n.child, out); },
                 [&](const node::Eventually& n) {
                   write_unary("eventually", &n.interval, n.child, out);
                 },
                 [&](const node::Historically& n) {
                   write_unary("historically", &n.interval, n.child, out);
                 },
                 [&](const node::Once& n) { write_unary("once", &n.interval, n.child, out); },
                 [&](const node::Until& n) {
                   write_binary(n.lhs, "until", &n.interval, n.rhs, out);
                 },
                 [&](const node::Since& n) {
                   write_binary(n.lhs, "since", &n.interval, n.rhs, out);
                 },
                 [&](const node::Probability& n) {
                   out += 'P';
                   out += to_string(n.op);
                   out += format_number(n.threshold);
                   write_group(n.child, out);
                 },
             },
             f.node());
}

}  // namespace

std::string format_expression(const Expression& e) {
  std::string out;
  write(e, out);
  return out;
}

std::string format_formula(const Formula& f) {
  std::string out;
  write(f, out);
  return out;
}

}  // namespace prstl
