// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>

#include "prstl/detail/overloaded.hpp"
#include "prstl/error.hpp"
#include "prstl/formula.hpp"

namespace prstl {

std::string_view to_string(Comparison op) noexcept {
  switch (op) {
    case Comparison::Less: return "<";
    case Comparison::LessEqual: return "<=";
    case Comparison::Greater: return ">";
    case Comparison::GreaterEqual: return ">=";
    case Comparison::Equal: return "==";
    case Comparison::NotEqual: return "!=";
  }
  return "?";
}

bool holds(double lhs, Comparison op, double rhs) noexcept {
  switch (op) {
    case Comparison::Less: return lhs < rhs;
    case Comparison::LessEqual: return lhs <= rhs;
    case Comparison::Greater: return lhs > rhs;
    case Comparison::GreaterEqual: return lhs >= rhs;
    case Comparison::Equal: return lhs == rhs;
    case Comparison::NotEqual: return lhs != rhs;
  }
  return false;
}

std::string_view to_string(BinaryOp op) noexcept {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
  }
  return "?";
}

std::string_view to_string(Function fn) noexcept {
  switch (fn) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Exp: return "exp";
    case Function::Log: return "log";
    case Function::Sqrt: return "sqrt";
    case Function::Abs: return "abs";
    case Function::Min: return "min";
    case Function::Max: return "max";
  }
  return "?";
}

std::size_t arity(Function fn) noexcept {
  return (fn == Function::Min || fn == Function::Max) ? 2 : 1;
}

Expression Expression::variable(std::string name) {
  return Expression(std::make_shared<const Node>(expr::Variable{std::move(name)}));
}

Expression Expression::constant(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("expression constants must be finite");
  return Expression(std::make_shared<const Node>(expr::Constant{value}));
}

Expression Expression::binary(BinaryOp op, Expression lhs, Expression rhs) {
  return Expression(
      std::make_shared<const Node>(expr::Binary{op, std::move(lhs), std::move(rhs)}));
}

Expression Expression::call(Function fn, std::vector<Expression> args) {
  if (args.size() != arity(fn)) {
    throw std::invalid_argument(std::string(to_string(fn)) + " takes " +
                                std::to_string(arity(fn)) + " argument(s)");
  }
  return Expression(std::make_shared<const Node>(expr::Call{fn, std::move(args)}));
}

bool operator==(const Expression& a, const Expression& b) {
  return a.node_ == b.node_ || *a.node_ == *b.node_;
}

namespace {

double checked(double value, std::string_view what) {
  if (!std::isfinite(value)) {
    throw DomainError(std::string(what) + " produced a non-finite value");
  }
  return value;
}

double apply(BinaryOp op, double a, double b) {
  switch (op) {
    case BinaryOp::Add: return checked(a + b, "addition");
    case BinaryOp::Sub: return checked(a - b, "subtraction");
    case BinaryOp::Mul: return checked(a * b, "multiplication");
    case BinaryOp::Div:
      if (b == 0.0) throw DomainError("division by zero");
      return checked(a / b, "division");
  }
  return 0.0;
}

double apply(Function fn, double a, double b) {
  switch (fn) {
    case Function::Sin: return std::sin(a);
    case Function::Cos: return std::cos(a);
    case Function::Exp: return checked(std::exp(a), "exp");
    case Function::Log:
      if (a <= 0.0) throw DomainError("log of non-positive argument");
      return std::log(a);
    case Function::Sqrt:
      if (a < 0.0) throw DomainError("sqrt of negative argument");
      return std::sqrt(a);
    case Function::Abs: return std::fabs(a);
    case Function::Min: return std::fmin(a, b);
    case Function::Max: return std::fmax(a, b);
  }
  return 0.0;
}

}  // namespace

using detail::overloaded;

double eval_expression(const Expression& e, const Environment& env) {
  return std::visit(
      overloaded{
          [&](const expr::Variable& v) {
            auto it = env.find(v.name);
            if (it == env.end()) throw UnboundVariableError(v.name);
            return it->second;
          },
          [](const expr::Constant& c) { return c.value; },
          [&](const expr::Binary& b) {
            return apply(b.op, eval_expression(b.lhs, env), eval_expression(b.rhs, env));
          },
          [&](const expr::Call& c) {
            double a = eval_expression(c.args[0], env);
            double b = c.args.size() > 1 ? eval_expression(c.args[1], env) : 0.0;
            return apply(c.fn, a, b);
          },
      },
      e.node());
}

std::vector<double> eval_expression_columns(
    const Expression& e, const std::function<std::span<const double>(const std::string&)>& column,
    std::size_t count) {
  return std::visit(
      overloaded{
          [&](const expr::Variable& v) {
            auto values = column(v.name);
            if (values.size() != count) {
              throw EvaluationError("column '" + v.name + "' has the wrong length");
            }
            return std::vector<double>(values.begin(), values.end());
          },
          [&](const expr::Constant& c) { return std::vector<double>(count, c.value); },
          [&](const expr::Binary& b) {
            auto lhs = eval_expression_columns(b.lhs, column, count);
            auto rhs = eval_expression_columns(b.rhs, column, count);
            for (std::size_t i = 0; i < count; ++i) lhs[i] = apply(b.op, lhs[i], rhs[i]);
            return lhs;
          },
          [&](const expr::Call& c) {
            auto a = eval_expression_columns(c.args[0], column, count);
            if (c.args.size() > 1) {
              auto b = eval_expression_columns(c.args[1], column, count);
              for (std::size_t i = 0; i < count; ++i) a[i] = apply(c.fn, a[i], b[i]);
            } else {
              for (std::size_t i = 0; i < count; ++i) a[i] = apply(c.fn, a[i], 0.0);
            }
            return a;
          },
      },
      e.node());
}

void collect_variables(const Expression& e, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const expr::Variable& v) { out.insert(v.name); },
                 [](const expr::Constant&) {},
                 [&](const expr::Binary& b) {
                   collect_variables(b.lhs, out);
                   collect_variables(b.rhs, out);
                 },
                 [&](const expr::Call& c) {
                   for (const auto& a : c.args) collect_variables(a, out);
                 },
             },
             e.node());
}

}  // namespace prstl
