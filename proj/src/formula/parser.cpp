// SPDX-License-Identifier: Apache-2.0
//
// Recursive-descent parser for the concrete PrSTL syntax:
//
//   formula      ::= "P" comparison number "(" formula ")"
//                  | ("always" | "eventually" | "historically" | "once") interval "(" formula ")"
//                  | ("not" | "next") "(" formula ")"
//                  | "true" | "false"
//                  | "(" formula ")" [("and" | "or" | "implies") "(" formula ")"]
//                  | "(" formula ")" ("until" | "since") interval "(" formula ")"
//                  | expression comparison expression
//   interval     ::= "[" number "," number "]" | "[" number "," "inf" ")"
//
// Expressions use the usual precedence (* / over + -, left associative) and
// may be parenthesized. A parenthesized group at formula position is a
// sub-formula when it contains a comparison or a formula keyword, otherwise
// it starts an arithmetic expression.

#include <array>
#include <charconv>
#include <cmath>
#include <optional>

#include "prstl/error.hpp"
#include "prstl/formula.hpp"

namespace prstl {

namespace {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Plus,
  Minus,
  Star,
  Slash,
  Cmp,
  End
};

struct Token {
  Tok kind;
  std::size_t pos;
  std::string_view text;
  double number = 0.0;
  Comparison cmp = Comparison::Less;
};

constexpr std::array kFormulaKeywords = {
    std::string_view("always"), std::string_view("eventually"), std::string_view("historically"),
    std::string_view("once"),   std::string_view("not"),        std::string_view("next"),
    std::string_view("and"),    std::string_view("or"),         std::string_view("implies"),
    std::string_view("until"),  std::string_view("since"),      std::string_view("true"),
    std::string_view("false")};

bool is_formula_keyword(std::string_view s) {
  for (auto k : kFormulaKeywords)
    if (k == s) return true;
  return false;
}

std::optional<Function> function_named(std::string_view s) {
  static constexpr std::array<std::pair<std::string_view, Function>, 8> table{{
      {"sin", Function::Sin},
      {"cos", Function::Cos},
      {"exp", Function::Exp},
      {"log", Function::Log},
      {"sqrt", Function::Sqrt},
      {"abs", Function::Abs},
      {"min", Function::Min},
      {"max", Function::Max},
  }};
  for (const auto& [name, fn] : table)
    if (name == s) return fn;
  return std::nullopt;
}

bool is_reserved(std::string_view s) {
  return is_formula_keyword(s) || s == "inf" || function_named(s).has_value();
}

[[noreturn]] void syntax(std::size_t pos, std::string detail, std::vector<std::string> expected = {}) {
  throw ParseError(ParseError::Kind::Syntax, pos, std::move(detail), std::move(expected));
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  auto is_ident_start = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (is_ident_start(c)) {
      while (i < text.size() && (is_ident_start(text[i]) || is_digit(text[i]))) ++i;
      out.push_back({Tok::Ident, start, text.substr(start, i - start)});
      continue;
    }
    if (is_digit(c)) {
      while (i < text.size() && is_digit(text[i])) ++i;
      if (i < text.size() && text[i] == '.') {
        ++i;
        if (i >= text.size() || !is_digit(text[i])) syntax(i, "malformed number", {"<digit>"});
        while (i < text.size() && is_digit(text[i])) ++i;
      }
      if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
        if (j < text.size() && is_digit(text[j])) {
          i = j;
          while (i < text.size() && is_digit(text[i])) ++i;
        }
      }
      Token t{Tok::Number, start, text.substr(start, i - start)};
      auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + i, t.number);
      if (ec != std::errc() || !std::isfinite(t.number)) syntax(start, "number out of range");
      out.push_back(t);
      continue;
    }
    auto two = text.substr(i, 2);
    auto cmp = [&](Comparison op, std::size_t len) {
      Token t{Tok::Cmp, start, text.substr(start, len)};
      t.cmp = op;
      out.push_back(t);
      i += len;
    };
    if (two == "<=") { cmp(Comparison::LessEqual, 2); continue; }
    if (two == ">=") { cmp(Comparison::GreaterEqual, 2); continue; }
    if (two == "==") { cmp(Comparison::Equal, 2); continue; }
    if (two == "!=") { cmp(Comparison::NotEqual, 2); continue; }
    if (c == '<') { cmp(Comparison::Less, 1); continue; }
    if (c == '>') { cmp(Comparison::Greater, 1); continue; }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case ',': kind = Tok::Comma; break;
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      default:
        syntax(start, "unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back({kind, start, text.substr(start, 1)});
    ++i;
  }
  out.push_back({Tok::End, text.size(), {}});
  return out;
}

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + std::string(t.text) + "'";
}

const std::vector<std::string>& formula_start() {
  static const std::vector<std::string> s{
      "P",    "always", "eventually", "historically", "once",       "not",      "next",
      "true", "false",  "(",          "<variable>",   "<number>",   "<function>", "-"};
  return s;
}

const std::vector<std::string>& comparisons() {
  static const std::vector<std::string> s{"<", "<=", ">", ">=", "==", "!="};
  return s;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Formula parse() {
    Formula f = formula();
    if (peek().kind != Tok::End) {
      syntax(peek().pos, "unexpected " + describe(peek()) + " after complete formula",
             {"end of input"});
    }
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  const Token& expect(Tok kind, std::string_view spelling) {
    if (peek().kind != kind) {
      syntax(peek().pos, "unexpected " + describe(peek()), {std::string(spelling)});
    }
    return advance();
  }

  bool at_ident(std::string_view s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == s;
  }

  // "(" formula ")"
  Formula group() {
    expect(Tok::LParen, "(");
    Formula f = formula();
    expect(Tok::RParen, ")");
    return f;
  }

  bool group_is_formula(std::size_t open) const {
    int depth = 0;
    for (std::size_t i = open; i < tokens_.size(); ++i) {
      const Token& t = tokens_[i];
      if (t.kind == Tok::LParen) ++depth;
      if (t.kind == Tok::RParen && --depth == 0) return false;
      if (t.kind == Tok::Cmp) return true;
      if (t.kind == Tok::Ident && is_formula_keyword(t.text)) return true;
    }
    return true;
  }

  bool at_probability() const {
    if (!at_ident("P") || peek(1).kind != Tok::Cmp) return false;
    std::size_t k = peek(2).kind == Tok::Minus ? 3 : 2;
    return peek(k).kind == Tok::Number && peek(k + 1).kind == Tok::LParen;
  }

  Formula formula() {
    const Token& t = peek();
    if (at_probability()) return probability();
    if (t.kind == Tok::Ident) {
      std::string_view w = t.text;
      if (w == "always" || w == "eventually" || w == "historically" || w == "once") {
        advance();
        Interval i = interval();
        Formula child = group();
        if (w == "always") return Formula::always(i, std::move(child));
        if (w == "eventually") return Formula::eventually(i, std::move(child));
        if (w == "historically") return Formula::historically(i, std::move(child));
        return Formula::once(i, std::move(child));
      }
      if (w == "not" || w == "next") {
        advance();
        Formula child = group();
        return w == "not" ? Formula::negation(std::move(child)) : Formula::next(std::move(child));
      }
      if (w == "true") {
        advance();
        return Formula::top();
      }
      if (w == "false") {
        advance();
        return Formula::bottom();
      }
      if (w == "and" || w == "or" || w == "implies" || w == "until" || w == "since") {
        syntax(t.pos, "binary operator '" + std::string(w) + "' needs a parenthesized left operand",
               formula_start());
      }
    }
    if (t.kind == Tok::LParen && group_is_formula(pos_)) {
      Formula lhs = group();
      const Token& op = peek();
      if (op.kind != Tok::Ident) return lhs;
      if (op.text == "and" || op.text == "or" || op.text == "implies") {
        advance();
        Formula rhs = group();
        if (op.text == "and") return Formula::conjunction(std::move(lhs), std::move(rhs));
        if (op.text == "or") return Formula::disjunction(std::move(lhs), std::move(rhs));
        return Formula::implication(std::move(lhs), std::move(rhs));
      }
      if (op.text == "until" || op.text == "since") {
        advance();
        Interval i = interval();
        Formula rhs = group();
        return op.text == "until" ? Formula::until(i, std::move(lhs), std::move(rhs))
                                  : Formula::since(i, std::move(lhs), std::move(rhs));
      }
      if (op.text == "release") {
        syntax(op.pos, "the release operator is not supported (it has no robustness semantics)",
               {"and", "or", "implies", "until", "since"});
      }
      return lhs;
    }
    if (t.kind == Tok::End || t.kind == Tok::RParen || t.kind == Tok::RBracket ||
        t.kind == Tok::Comma || t.kind == Tok::Cmp) {
      syntax(t.pos, "unexpected " + describe(t), formula_start());
    }
    return predicate();
  }

  Formula probability() {
    advance();  // P
    const Token& cmp = advance();
    if (!is_order_comparison(cmp.cmp)) {
      throw ParseError(ParseError::Kind::Probability, cmp.pos,
                       "probability operators admit only <, <=, >, >=");
    }
    if (peek().kind == Tok::Minus) {
      throw ParseError(ParseError::Kind::Probability, peek().pos,
                       "probability threshold must lie in [0, 1]");
    }
    const Token& num = advance();
    if (!(num.number >= 0.0 && num.number <= 1.0)) {
      throw ParseError(ParseError::Kind::Probability, num.pos,
                       "probability threshold " + std::string(num.text) + " is outside [0, 1]");
    }
    Formula child = group();
    return Formula::probability(cmp.cmp, num.number, std::move(child));
  }

  Interval interval() {
    const Token& open = expect(Tok::LBracket, "[");
    if (peek().kind == Tok::Minus) {
      throw ParseError(ParseError::Kind::Interval, peek().pos,
                       "interval lower bound must be non-negative");
    }
    double lower = expect(Tok::Number, "<number>").number;
    expect(Tok::Comma, ",");
    if (at_ident("inf")) {
      advance();
      expect(Tok::RParen, ")");
      return Interval(lower, std::nullopt);
    }
    if (peek().kind == Tok::Minus) {
      throw ParseError(ParseError::Kind::Interval, peek().pos,
                       "interval upper bound must be non-negative");
    }
    if (peek().kind != Tok::Number) {
      syntax(peek().pos, "unexpected " + describe(peek()), {"<number>", "inf"});
    }
    double upper = advance().number;
    expect(Tok::RBracket, "]");
    if (lower > upper) {
      throw ParseError(ParseError::Kind::Interval, open.pos,
                       "lower bound " + format_number(lower) + " exceeds upper bound " +
                           format_number(upper));
    }
    return Interval(lower, upper);
  }

  Formula predicate() {
    Expression lhs = expression();
    if (peek().kind != Tok::Cmp) {
      std::vector<std::string> expected = comparisons();
      expected.insert(expected.end(), {"+", "-", "*", "/"});
      syntax(peek().pos, "unexpected " + describe(peek()), std::move(expected));
    }
    Comparison op = advance().cmp;
    Expression rhs = expression();
    return Formula::predicate(std::move(lhs), op, std::move(rhs));
  }

  Expression expression() {
    Expression lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      BinaryOp op = advance().kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      lhs = Expression::binary(op, std::move(lhs), term());
    }
    return lhs;
  }

  Expression term() {
    Expression lhs = factor();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      BinaryOp op = advance().kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
      lhs = Expression::binary(op, std::move(lhs), factor());
    }
    return lhs;
  }

  Expression factor() {
    if (peek().kind == Tok::Minus) {
      advance();
      if (peek().kind == Tok::Number) return Expression::constant(-advance().number);
      return Expression::binary(BinaryOp::Sub, Expression::constant(0.0), factor());
    }
    return primary();
  }

  Expression primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: advance(); return Expression::constant(t.number);
      case Tok::LParen: {
        advance();
        Expression e = expression();
        expect(Tok::RParen, ")");
        return e;
      }
      case Tok::Ident: {
        if (auto fn = function_named(t.text)) {
          advance();
          expect(Tok::LParen, "(");
          std::vector<Expression> args;
          args.push_back(expression());
          while (peek().kind == Tok::Comma) {
            advance();
            args.push_back(expression());
          }
          expect(Tok::RParen, ")");
          if (args.size() != arity(*fn)) {
            syntax(t.pos, std::string(t.text) + " takes " + std::to_string(arity(*fn)) +
                              " argument(s), got " + std::to_string(args.size()));
          }
          return Expression::call(*fn, std::move(args));
        }
        if (is_reserved(t.text)) {
          syntax(t.pos, "keyword '" + std::string(t.text) + "' cannot be used in an expression",
                 {"<variable>", "<number>", "<function>", "("});
        }
        advance();
        return Expression::variable(std::string(t.text));
      }
      default:
        syntax(t.pos, "unexpected " + describe(t), {"<variable>", "<number>", "<function>", "(", "-"});
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

}  // namespace prstl
