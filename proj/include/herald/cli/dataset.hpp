#pragma once

#include "herald/preprocess/problem.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace herald::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public std::runtime_error {
 public:
  SchemaError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line), message_(message) {}
  int line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  std::string message_;
};

struct SkippedLine {
  int line = 0;
  std::string message;
};

struct Dataset {
  std::vector<preprocess::Problem> problems;
  std::vector<SkippedLine> skipped;  // filled only when lenient
};

// Throws std::invalid_argument describing the first schema violation.
preprocess::Problem problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const preprocess::Problem& p);

// One JSON object per line; blank lines are ignored. A malformed line or a
// repeated id throws SchemaError, or is skipped and listed when lenient.
Dataset ingest(const std::string& path, bool lenient = false);
Dataset ingest_text(const std::string& text, bool lenient = false);

struct Split {
  std::vector<preprocess::Problem> train;
  std::vector<preprocess::Problem> val;
  std::vector<preprocess::Problem> test;
};

// Fisher-Yates shuffle driven by Rng(seed), then contiguous slices of
// round(n * ratio) for train and val; test takes the rest. Ratios must be
// non-negative and sum to 1.
Split split(std::vector<preprocess::Problem> problems, const std::array<double, 3>& ratios, std::uint64_t seed);

}  // namespace herald::cli
