#include "herald/cli/dataset.hpp"

#include "herald/common/random.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace herald::cli {

namespace {

using nlohmann::json;
using preprocess::Problem;
using preprocess::ReferenceStep;

std::string string_field(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_string()) throw std::invalid_argument(std::string("field ") + key + " must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return string_field(j, key);
}

ReferenceStep step_from_json(const json& s) {
  if (s.is_array() && s.size() == 2 && s[0].is_string() && s[1].is_string())
    return {s[0].get<std::string>(), s[1].get<std::string>()};
  if (s.is_object() && s.contains("expression") && s.contains("value"))
    return {string_field(s, "expression"), string_field(s, "value")};
  throw std::invalid_argument("reference_steps entries must be {expression, value} or a two-string array");
}

}  // namespace

Problem problem_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("line is not a JSON object");
  static const std::set<std::string> known{"id",       "statement_en",    "statement_ru",       "category",
                                           "reference_answer", "reference_steps", "critical_value_mask"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw std::invalid_argument("unknown field " + key);
  if (!j.contains("id")) throw std::invalid_argument("missing field id");
  Problem p;
  p.id = string_field(j, "id");
  if (p.id.empty()) throw std::invalid_argument("id is empty");
  if (auto en = optional_string(j, "statement_en")) p.statement_en = *en;
  p.statement_ru = optional_string(j, "statement_ru");
  if (p.statement_en.empty() && (!p.statement_ru || p.statement_ru->empty()))
    throw std::invalid_argument("no statement present");
  p.category = optional_string(j, "category");
  p.reference_answer = optional_string(j, "reference_answer");
  if (j.contains("reference_steps") && !j["reference_steps"].is_null()) {
    if (!j["reference_steps"].is_array()) throw std::invalid_argument("reference_steps must be an array");
    std::vector<ReferenceStep> steps;
    for (const auto& s : j["reference_steps"]) steps.push_back(step_from_json(s));
    p.reference_steps = std::move(steps);
  }
  if (j.contains("critical_value_mask") && !j["critical_value_mask"].is_null()) {
    const json& m = j["critical_value_mask"];
    if (!m.is_array()) throw std::invalid_argument("critical_value_mask must be an array");
    std::vector<std::size_t> mask;
    for (const auto& i : m) {
      if (!i.is_number_unsigned()) throw std::invalid_argument("critical_value_mask entries must be non-negative integers");
      mask.push_back(i.get<std::size_t>());
    }
    p.critical_value_mask = std::move(mask);
  }
  return p;
}

json problem_to_json(const Problem& p) {
  json j{{"id", p.id}, {"statement_en", p.statement_en}};
  if (p.statement_ru) j["statement_ru"] = *p.statement_ru;
  if (p.category) j["category"] = *p.category;
  if (p.reference_answer) j["reference_answer"] = *p.reference_answer;
  if (p.reference_steps) {
    json steps = json::array();
    for (const auto& s : *p.reference_steps) steps.push_back({{"expression", s.expression}, {"value", s.value}});
    j["reference_steps"] = steps;
  }
  if (p.critical_value_mask) j["critical_value_mask"] = *p.critical_value_mask;
  return j;
}

Dataset ingest_text(const std::string& text, bool lenient) {
  Dataset out;
  std::set<std::string> ids;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      json j;
      try {
        j = json::parse(line);
      } catch (const json::parse_error&) {
        throw std::invalid_argument("not valid JSON");
      }
      Problem p = problem_from_json(j);
      if (!ids.insert(p.id).second) throw std::invalid_argument("duplicate id " + p.id);
      out.problems.push_back(std::move(p));
    } catch (const std::exception& e) {
      if (!lenient) throw SchemaError(number, e.what());
      out.skipped.push_back({number, e.what()});
    }
  }
  return out;
}

Dataset ingest(const std::string& path, bool lenient) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading dataset " + path);
  return ingest_text(buf.str(), lenient);
}

Split split(std::vector<Problem> problems, const std::array<double, 3>& ratios, std::uint64_t seed) {
  double total = 0;
  for (double r : ratios) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("split ratios must lie in [0, 1]");
    total += r;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("split ratios must sum to 1");

  Rng rng(seed);
  for (std::size_t i = problems.size(); i > 1; --i) std::swap(problems[i - 1], problems[rng.below(i)]);

  const std::size_t n = problems.size();
  const auto n_train = std::min(n, static_cast<std::size_t>(std::llround(static_cast<double>(n) * ratios[0])));
  const auto n_val = std::min(n - n_train, static_cast<std::size_t>(std::llround(static_cast<double>(n) * ratios[1])));
  Split s;
  auto first = std::make_move_iterator(problems.begin());
  s.train.assign(first, first + static_cast<std::ptrdiff_t>(n_train));
  s.val.assign(first + static_cast<std::ptrdiff_t>(n_train), first + static_cast<std::ptrdiff_t>(n_train + n_val));
  s.test.assign(first + static_cast<std::ptrdiff_t>(n_train + n_val), std::make_move_iterator(problems.end()));
  return s;
}

}  // namespace herald::cli
