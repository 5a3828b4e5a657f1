// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace prstl {

enum class Comparison { Less, LessEqual, Greater, GreaterEqual, Equal, NotEqual };

/// Concrete spelling used by the parser and formatter ("<", "<=", ..., "==", "!=").
std::string_view to_string(Comparison op) noexcept;

/// Evaluates `lhs op rhs` on reals.
bool holds(double lhs, Comparison op, double rhs) noexcept;

/// True for the four order comparisons admitted by probability operators.
constexpr bool is_order_comparison(Comparison op) noexcept {
  return op != Comparison::Equal && op != Comparison::NotEqual;
}

enum class BinaryOp { Add, Sub, Mul, Div };
enum class Function { Sin, Cos, Exp, Log, Sqrt, Abs, Min, Max };

std::string_view to_string(BinaryOp op) noexcept;
std::string_view to_string(Function fn) noexcept;
std::size_t arity(Function fn) noexcept;

// ---------------------------------------------------------------------------
// Expressions

class Expression;

namespace expr {
struct Variable;
struct Constant;
struct Binary;
struct Call;
}  // namespace expr

/// Immutable arithmetic expression tree over named signal variables. Copies
/// share structure; values are safe to share across threads.
class Expression {
 public:
  using Node = std::variant<expr::Variable, expr::Constant, expr::Binary, expr::Call>;

  static Expression variable(std::string name);
  static Expression constant(double value);
  static Expression binary(BinaryOp op, Expression lhs, Expression rhs);
  /// Throws std::invalid_argument when the argument count does not match arity(fn).
  static Expression call(Function fn, std::vector<Expression> args);

  const Node& node() const noexcept;

  template <class T>
  const T* as() const noexcept;

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

namespace expr {
struct Variable {
  std::string name;
  friend bool operator==(const Variable&, const Variable&) = default;
};
struct Constant {
  double value;
  friend bool operator==(const Constant&, const Constant&) = default;
};
struct Binary {
  BinaryOp op;
  Expression lhs;
  Expression rhs;
  friend bool operator==(const Binary&, const Binary&) = default;
};
struct Call {
  Function fn;
  std::vector<Expression> args;
  friend bool operator==(const Call&, const Call&) = default;
};
}  // namespace expr

inline const Expression::Node& Expression::node() const noexcept { return *node_; }

template <class T>
const T* Expression::as() const noexcept {
  return std::get_if<T>(node_.get());
}

using Environment = std::map<std::string, double, std::less<>>;

/// Evaluates `e` under `env`. Throws UnboundVariableError for free variables
/// missing from `env` and DomainError for log/sqrt of negatives, log(0),
/// division by zero, or any non-finite intermediate result.
double eval_expression(const Expression& e, const Environment& env);

/// Column-wise evaluation: `column(name)` returns the values of a variable at
/// `count` aligned points. Same error contract as eval_expression.
std::vector<double> eval_expression_columns(
    const Expression& e, const std::function<std::span<const double>(const std::string&)>& column,
    std::size_t count);

void collect_variables(const Expression& e, std::set<std::string>& out);

// ---------------------------------------------------------------------------
// Formulas

/// Time interval [lower, upper] in seconds; `upper` empty means unbounded.
struct Interval {
  double lower = 0.0;
  std::optional<double> upper;

  Interval() = default;
  /// Throws std::invalid_argument unless 0 <= lower <= upper and both finite.
  Interval(double lower, std::optional<double> upper);

  bool bounded() const noexcept { return upper.has_value(); }
  double upper_or_inf() const noexcept {
    return upper.value_or(std::numeric_limits<double>::infinity());
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

class Formula;

namespace node {
struct Top {
  friend bool operator==(const Top&, const Top&) = default;
};
struct Bottom {
  friend bool operator==(const Bottom&, const Bottom&) = default;
};
struct Predicate;
struct Not;
struct Next;
template <class Tag>
struct BooleanBinary;
template <class Tag>
struct TemporalUnary;
template <class Tag>
struct TemporalBinary;
struct Probability;

struct AndTag;
struct OrTag;
struct ImpliesTag;
struct AlwaysTag;
struct EventuallyTag;
struct HistoricallyTag;
struct OnceTag;
struct UntilTag;
struct SinceTag;

using And = BooleanBinary<AndTag>;
using Or = BooleanBinary<OrTag>;
using Implies = BooleanBinary<ImpliesTag>;
using Always = TemporalUnary<AlwaysTag>;
using Eventually = TemporalUnary<EventuallyTag>;
using Historically = TemporalUnary<HistoricallyTag>;
using Once = TemporalUnary<OnceTag>;
using Until = TemporalBinary<UntilTag>;
using Since = TemporalBinary<SinceTag>;
}  // namespace node

/// Immutable PrSTL abstract syntax tree.
class Formula {
 public:
  using Node = std::variant<node::Top, node::Bottom, node::Predicate, node::Not, node::And,
                            node::Or, node::Implies, node::Always, node::Eventually, node::Until,
                            node::Next, node::Historically, node::Once, node::Since,
                            node::Probability>;

  static Formula top();
  static Formula bottom();
  static Formula predicate(Expression lhs, Comparison op, Expression rhs);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula always(Interval i, Formula f);
  static Formula eventually(Interval i, Formula f);
  static Formula until(Interval i, Formula lhs, Formula rhs);
  static Formula next(Formula f);
  static Formula historically(Interval i, Formula f);
  static Formula once(Interval i, Formula f);
  static Formula since(Interval i, Formula lhs, Formula rhs);
  /// Throws std::invalid_argument for = / != comparisons or thresholds outside [0,1].
  static Formula probability(Comparison op, double threshold, Formula f);

  const Node& node() const noexcept;

  template <class T>
  const T* as() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

namespace node {
struct Predicate {
  Expression lhs;
  Comparison op;
  Expression rhs;
  friend bool operator==(const Predicate&, const Predicate&) = default;
};
struct Not {
  Formula child;
  friend bool operator==(const Not&, const Not&) = default;
};
struct Next {
  Formula child;
  friend bool operator==(const Next&, const Next&) = default;
};
template <class Tag>
struct BooleanBinary {
  Formula lhs;
  Formula rhs;
  friend bool operator==(const BooleanBinary&, const BooleanBinary&) = default;
};
template <class Tag>
struct TemporalUnary {
  Interval interval;
  Formula child;
  friend bool operator==(const TemporalUnary&, const TemporalUnary&) = default;
};
template <class Tag>
struct TemporalBinary {
  Interval interval;
  Formula lhs;
  Formula rhs;
  friend bool operator==(const TemporalBinary&, const TemporalBinary&) = default;
};
struct Probability {
  Comparison op;
  double threshold;
  Formula child;
  friend bool operator==(const Probability&, const Probability&) = default;
};
}  // namespace node

inline const Formula::Node& Formula::node() const noexcept { return *node_; }

template <class T>
const T* Formula::as() const noexcept {
  return std::get_if<T>(node_.get());
}

/// Parses the concrete PrSTL syntax. Throws ParseError.
Formula parse_formula(std::string_view text);

/// Canonical concrete syntax; parse_formula(format_formula(f)) == f.
std::string format_formula(const Formula& f);
std::string format_expression(const Expression& e);

/// Shortest decimal text that reads back to exactly `value`.
std::string format_number(double value);

std::set<std::string> free_variables(const Formula& f);
bool contains_probability(const Formula& f);

/// Furthest time past the evaluation instant that the formula can read
/// (+inf for unbounded future operators).
double future_reach(const Formula& f);
/// Furthest time before the evaluation instant that the formula can read.
double past_reach(const Formula& f);
/// Maximum number of nested next operators along any path.
std::size_t next_depth(const Formula& f);

}  // namespace prstl
