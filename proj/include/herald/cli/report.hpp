#pragma once

#include "herald/answer/value.hpp"
#include "herald/cli/pipeline.hpp"
#include "herald/metrics/metrics.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace herald::cli {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kHeraldVersion = "0.1.0";
inline constexpr int kReportDigits = 12;

class ReportSchemaError : public std::runtime_error {
 public:
  ReportSchemaError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// x rounded to `digits` significant decimal digits.
double round_significant(double x, int digits = kReportDigits);

// {"kind": "exact" | "decimal" | "symbolic" | "unparsed", "text": render(v)}
nlohmann::json answer_to_json(const answer::AnswerValue& v);
answer::AnswerValue answer_from_json(const nlohmann::json& j);

nlohmann::json summary_to_json(const metrics::Summary& s);

// Keys are sorted, reals carry at most 12 significant digits, and nothing
// depends on the clock, so equal inputs give equal bytes.
nlohmann::json build_report(const RunResult& result);
std::string dump_report(const nlohmann::json& report);

// Throws ReportSchemaError with a JSON-pointer-like path.
void validate_report(const nlohmann::json& report);

// Metric records rebuilt from a report's problems.
std::vector<metrics::RunRecord> records_from_report(const nlohmann::json& report);

}  // namespace herald::cli
