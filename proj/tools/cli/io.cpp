// SPDX-License-Identifier: Apache-2.0

#include "cli/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace prstl::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  for (std::size_t start = 0;;) {
    auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

class Reader {
 public:
  Reader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  void header(std::initializer_list<std::string_view> names) {
    std::string expected;
    for (auto n : names) expected += (expected.empty() ? "" : ",") + std::string(n);
    std::vector<std::string_view> fields;
    if (!next(fields)) throw InputError(source_, 0, "empty file; expected header '" + expected + "'");
    bool ok = fields.size() == names.size();
    std::size_t i = 0;
    for (auto n : names) ok = ok && fields[i++] == n;
    if (!ok) throw InputError(source_, line_, "expected header '" + expected + "'");
  }

  bool next(std::vector<std::string_view>& fields) {
    while (std::getline(in_, text_)) {
      ++line_;
      if (trim(text_).empty()) continue;
      fields = split(text_);
      return true;
    }
    if (in_.bad()) throw InputError(source_, line_, "read error");
    return false;
  }

  double number(std::string_view field, std::string_view what) const {
    double v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
      throw InputError(source_, line_, "invalid " + std::string(what) + " '" + std::string(field) + "'");
    }
    if (!std::isfinite(v)) {
      throw InputError(source_, line_, "non-finite " + std::string(what) + " '" + std::string(field) + "'");
    }
    return v;
  }

  void arity(const std::vector<std::string_view>& fields, std::size_t n) const {
    if (fields.size() != n) {
      throw InputError(source_, line_, "expected " + std::to_string(n) + " fields, found " +
                                           std::to_string(fields.size()));
    }
  }

  std::size_t line() const { return line_; }
  const std::string& source() const { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  std::string text_;
  std::size_t line_ = 0;
};

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, 0, "cannot open file");
  return in;
}

}  // namespace

std::vector<Reading> read_trace_csv(std::istream& in, const std::string& source) {
  Reader r(in, source);
  r.header({"time", "variable", "value"});
  std::vector<Reading> out;
  std::map<std::string, double, std::less<>> last;
  std::vector<std::string_view> f;
  while (r.next(f)) {
    r.arity(f, 3);
    double t = r.number(f[0], "time");
    if (t < 0) throw InputError(source, r.line(), "negative time");
    if (f[1].empty()) throw InputError(source, r.line(), "empty variable name");
    double v = r.number(f[2], "value");
    auto it = last.find(f[1]);
    if (it != last.end()) {
      if (t <= it->second) {
        throw InputError(source, r.line(),
                         "times of '" + std::string(f[1]) + "' must strictly increase (t=" +
                             format_number(t) + " after t=" + format_number(it->second) + ")");
      }
      it->second = t;
    } else {
      last.emplace(std::string(f[1]), t);
    }
    out.push_back({t, std::string(f[1]), v});
  }
  return out;
}

std::vector<Reading> read_trace_file(const std::string& path) {
  auto in = open(path);
  return read_trace_csv(in, path);
}

CalibrationData read_calibration_csv(std::istream& in, const std::string& source) {
  Reader r(in, source);
  r.header({"truth", "sensed"});
  CalibrationData out;
  std::vector<std::string_view> f;
  while (r.next(f)) {
    r.arity(f, 2);
    out.truth.push_back(r.number(f[0], "truth"));
    out.sensed.push_back(r.number(f[1], "sensed"));
  }
  return out;
}

CalibrationData read_calibration_file(const std::string& path) {
  auto in = open(path);
  return read_calibration_csv(in, path);
}

std::string read_text_file(const std::string& path) {
  auto in = open(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace prstl::cli
