// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "prstl/error.hpp"
#include "prstl/monitor.hpp"

namespace prstl::cli {

/// Malformed input file; carries the 1-based line number (0 for the file
/// as a whole).
class InputError : public Error {
 public:
  InputError(std::string source, std::size_t line, const std::string& message)
      : Error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + message),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Long-format trace: header `time,variable,value`, one sample per row.
/// Rows of different variables may interleave; each variable's times must
/// strictly increase. Blank lines are skipped.
std::vector<Reading> read_trace_csv(std::istream& in, const std::string& source);
std::vector<Reading> read_trace_file(const std::string& path);

struct CalibrationData {
  std::vector<double> truth;
  std::vector<double> sensed;
};

/// Paired calibration data: header `truth,sensed`.
CalibrationData read_calibration_csv(std::istream& in, const std::string& source);
CalibrationData read_calibration_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace prstl::cli
