// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace prstl {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the formula parser. Carries the byte offset of the offending
/// token and, for syntax errors, the set of tokens that would have been
/// accepted there.
class ParseError : public Error {
 public:
  enum class Kind { Syntax, Interval, Probability };

  ParseError(Kind kind, std::size_t position, std::string detail,
             std::vector<std::string> expected = {});

  Kind kind() const noexcept { return kind_; }
  std::size_t position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  Kind kind_;
  std::size_t position_;
  std::string detail_;
  std::vector<std::string> expected_;
};

/// Expression evaluation failures: unbound variables and numeric domain
/// violations (log/sqrt of negatives, division by zero, overflow).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class UnboundVariableError : public EvaluationError {
 public:
  explicit UnboundVariableError(const std::string& name)
      : EvaluationError("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class DomainError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

/// Signal storage and query errors.
class SignalError : public Error {
 public:
  enum class Kind { OutOfOrder, NonFinite, OutOfRange, NoSample, UnknownVariable, Horizon, Mismatch };

  SignalError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Robustness evaluation errors (probabilistic node reached, strict-horizon
/// violation).
class RobustnessError : public Error {
 public:
  using Error::Error;
};

/// Noise model fitting, sampling and serialization errors.
class NoiseError : public Error {
 public:
  using Error::Error;
};

/// Statistical model checking errors (bad configuration, degenerate
/// splitting levels).
class SmcError : public Error {
 public:
  using Error::Error;
};

}  // namespace prstl
