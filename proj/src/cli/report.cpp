#include "herald/cli/report.hpp"

#include "herald/answer/simplify.hpp"
#include "herald/routing/router.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>

namespace herald::cli {

namespace {

using nlohmann::json;

void round_reals(json& j) {
  if (j.is_number_float()) {
    j = round_significant(j.get<double>());
  } else if (j.is_structured()) {
    for (auto& child : j) round_reals(child);
  }
}

std::string hex64(std::uint64_t x) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(x));
  return buf;
}

json steps_to_json(const std::vector<preprocess::ReferenceStep>& steps) {
  json a = json::array();
  for (const auto& s : steps) a.push_back({{"expression", s.expression}, {"value", s.value}});
  return a;
}

std::vector<preprocess::ReferenceStep> steps_from_json(const json& a) {
  std::vector<preprocess::ReferenceStep> steps;
  for (const auto& s : a) steps.push_back({s.at("expression").get<std::string>(), s.at("value").get<std::string>()});
  return steps;
}

json verdict_to_json(const solvers::SolverVerdict& v, double confidence, double weight) {
  json trace = json::array();
  for (const auto& t : v.tool_trace)
    trace.push_back({{"action", t.action}, {"duration_ms", t.duration_ms}, {"success", t.success}});
  return json{{"solver", v.solver_id},
              {"role", std::string(role_name(v.role))},
              {"raw_answer", v.raw_answer},
              {"answer", answer_to_json(v.answer)},
              {"raw_score", v.raw_score},
              {"confidence", confidence},
              {"weight", weight},
              {"latency_ms", v.latency_ms},
              {"tool_trace", trace}};
}

json failure_to_json(const SolverFailure& f) {
  return json{{"solver", f.solver_id}, {"kind", f.kind}, {"message", f.message}};
}

json run_to_json(const RunOutcome& r) {
  json rounds = json::array();
  for (const Round& round : r.rounds) {
    json verdicts = json::array();
    for (std::size_t i = 0; i < round.verdicts.size(); ++i)
      verdicts.push_back(verdict_to_json(round.verdicts[i], round.confidence[i], round.weight[i]));
    json failures = json::array();
    for (const auto& f : round.failures) failures.push_back(failure_to_json(f));
    rounds.push_back({{"verdicts", verdicts}, {"failures", failures}});
  }
  json route_failures = json::array();
  for (const auto& f : r.route_failures) route_failures.push_back(failure_to_json(f));
  return json{{"answer", answer_to_json(r.answer)},
              {"correct", r.correct ? json(*r.correct) : json(nullptr)},
              {"error", r.error ? json(*r.error) : json(nullptr)},
              {"iterations", r.iterations},
              {"fallback", r.fallback},
              {"cache_hit", r.cache_hit},
              {"support", r.support},
              {"entropy_history", r.entropy_history},
              {"failed_rounds", r.failed_rounds},
              {"elapsed_s", r.elapsed_s},
              {"memory_mb", r.memory_mb},
              {"tool_used", r.tool_used},
              {"steps", steps_to_json(r.steps)},
              {"step_correct", r.step_correct},
              {"route_failures", route_failures},
              {"rounds", rounds}};
}

json problem_to_report(const ProblemResult& p) {
  json route{{"probabilities", p.route.p},
             {"operator_density", p.operator_density},
             {"decision", p.route.single ? "single" : "ensemble"},
             {"solver_role", p.route.single ? json(std::string(role_name(*p.route.single))) : json(nullptr)}};
  json runs = json::array();
  for (const auto& r : p.runs) runs.push_back(run_to_json(r));
  const bool has_runs = !p.runs.empty();
  return json{{"id", p.id},
              {"category", p.category ? json(*p.category) : json(nullptr)},
              {"reference_answer", p.reference_answer ? json(*p.reference_answer) : json(nullptr)},
              {"reference_steps", p.reference_steps ? steps_to_json(*p.reference_steps) : json(nullptr)},
              {"route", route},
              {"signature", hex64(p.signature)},
              {"bucket", p.bucket},
              {"final_answer", has_runs ? answer_to_json(p.runs.front().answer) : json(nullptr)},
              {"correct", has_runs && p.runs.front().correct ? json(*p.runs.front().correct) : json(nullptr)},
              {"runs", runs}};
}

// Minimal structural checker.
struct Checker {
  void fail(const std::string& path, const std::string& msg) const { throw ReportSchemaError(path, msg); }

  const json& field(const json& obj, const std::string& path, const char* key) const {
    if (!obj.is_object()) fail(path, "expected an object");
    if (!obj.contains(key)) fail(path + "/" + key, "missing");
    return obj.at(key);
  }
  void type(const json& j, const std::string& path, json::value_t t, bool nullable = false) const {
    if (nullable && j.is_null()) return;
    const bool ok = t == json::value_t::number_float ? j.is_number()
                    : t == json::value_t::number_unsigned ? j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0)
                                                          : j.type() == t;
    if (!ok) fail(path, std::string("expected ") + json(t).type_name() + ", found " + j.type_name());
  }
  void check(const json& obj, const std::string& path, const char* key, json::value_t t, bool nullable = false) const {
    type(field(obj, path, key), path + "/" + key, t, nullable);
  }
  void answer(const json& j, const std::string& path) const {
    check(j, path, "kind", json::value_t::string);
    check(j, path, "text", json::value_t::string);
    static const std::set<std::string> kinds{"exact", "decimal", "symbolic", "unparsed"};
    if (!kinds.count(j["kind"].get<std::string>())) fail(path + "/kind", "unknown answer kind");
  }
  void metrics(const json& m, const std::string& path) const {
    using V = json::value_t;
    check(m, path, "accuracy", V::number_float);
    check(m, path, "comp_acc", V::number_float, true);
    check(m, path, "pcs", V::number_float);
    check(m, path, "consistency", V::number_float);
    check(m, path, "efficiency", V::number_float);
    check(m, path, "tue", V::number_float, true);
    check(m, path, "mean_time_s", V::number_float);
    check(m, path, "mean_memory_mb", V::number_float);
  }
};

}  // namespace

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return std::strtod(buf, nullptr);
}

json answer_to_json(const answer::AnswerValue& v) {
  return json{{"kind", std::string(answer::kind_name(v.kind()))}, {"text", answer::render(v)}};
}

answer::AnswerValue answer_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const std::string text = j.at("text").get<std::string>();
  if (kind == "unparsed") return answer::AnswerValue::unparsed(text);
  if (kind == "decimal") return answer::AnswerValue::decimal(answer::Decimal::from_string(text, answer::kAnswerDigits));
  return answer::normalize_or_unparsed(text);
}

json summary_to_json(const metrics::Summary& s) {
  return json{{"accuracy", s.accuracy},
              {"comp_acc", s.comp_acc ? json(*s.comp_acc) : json(nullptr)},
              {"pcs", s.pcs},
              {"consistency", s.consistency},
              {"efficiency", s.efficiency},
              {"tue", s.tue ? json(*s.tue) : json(nullptr)},
              {"mean_time_s", s.mean_time_s},
              {"mean_memory_mb", s.mean_memory_mb}};
}

json build_report(const RunResult& result) {
  json calibrations = json::array();
  for (const auto& c : result.calibrations)
    calibrations.push_back({{"solver", c.fit.solver_id},
                            {"temperature", c.fit.temperature},
                            {"fitted_on", c.fit.fitted_on},
                            {"fallback_reason", c.fallback_reason ? json(*c.fallback_reason) : json(nullptr)},
                            {"ece_before", c.ece_before ? json(*c.ece_before) : json(nullptr)},
                            {"ece_after", c.ece_after ? json(*c.ece_after) : json(nullptr)}});
  json skipped = json::array();
  for (const auto& s : result.skipped) skipped.push_back({{"line", s.line}, {"message", s.message}});
  json problems = json::array();
  for (const auto& p : result.problems) problems.push_back(problem_to_report(p));

  json report{{"schema_version", kReportSchemaVersion},
              {"versions", {{"herald", kHeraldVersion}, {"report_schema", kReportSchemaVersion}}},
              {"config", to_json(result.config)},
              {"dataset",
               {{"train", result.train_size},
                {"val", result.val_size},
                {"test", result.test_size},
                {"skipped_lines", skipped}}},
              {"calibration", calibrations},
              {"problems", problems},
              {"aggregate",
               {{"evaluated", result.evaluated},
                {"failures", result.failures},
                {"metrics", result.summary ? summary_to_json(*result.summary) : json(nullptr)}}}};
  round_reals(report);
  return report;
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

void validate_report(const json& r) {
  using V = json::value_t;
  const Checker c;
  if (!r.is_object()) c.fail("", "report must be an object");
  c.check(r, "", "schema_version", V::number_unsigned);
  if (r["schema_version"].get<int>() != kReportSchemaVersion) c.fail("/schema_version", "unsupported version");
  c.check(r, "", "versions", V::object);
  c.check(r["versions"], "/versions", "herald", V::string);
  c.check(r, "", "config", V::object);
  c.check(r, "", "dataset", V::object);
  for (const char* k : {"train", "val", "test"}) c.check(r["dataset"], "/dataset", k, V::number_unsigned);
  c.check(r["dataset"], "/dataset", "skipped_lines", V::array);
  c.check(r, "", "calibration", V::array);
  for (std::size_t i = 0; i < r["calibration"].size(); ++i) {
    const std::string path = "/calibration/" + std::to_string(i);
    const json& cal = r["calibration"][i];
    c.check(cal, path, "solver", V::string);
    c.check(cal, path, "temperature", V::number_float);
    if (!(cal["temperature"].get<double>() > 0)) c.fail(path + "/temperature", "must be positive");
    c.check(cal, path, "fitted_on", V::number_unsigned);
    c.check(cal, path, "fallback_reason", V::string, true);
    c.check(cal, path, "ece_before", V::number_float, true);
    c.check(cal, path, "ece_after", V::number_float, true);
  }
  c.check(r, "", "problems", V::array);
  for (std::size_t i = 0; i < r["problems"].size(); ++i) {
    const std::string path = "/problems/" + std::to_string(i);
    const json& p = r["problems"][i];
    c.check(p, path, "id", V::string);
    c.check(p, path, "category", V::string, true);
    c.check(p, path, "reference_answer", V::string, true);
    c.check(p, path, "reference_steps", V::array, true);
    c.check(p, path, "signature", V::string);
    c.check(p, path, "bucket", V::number_unsigned);
    c.check(p, path, "correct", V::boolean, true);
    const json& route = c.field(p, path, "route");
    c.check(route, path + "/route", "probabilities", V::array);
    if (route["probabilities"].size() != 3) c.fail(path + "/route/probabilities", "expected three entries");
    c.check(route, path + "/route", "decision", V::string);
    const std::string decision = route["decision"].get<std::string>();
    if (decision != "single" && decision != "ensemble") c.fail(path + "/route/decision", "must be single or ensemble");
    c.check(route, path + "/route", "solver_role", V::string, true);
    c.check(p, path, "runs", V::array);
    if (!p["final_answer"].is_null()) c.answer(p["final_answer"], path + "/final_answer");
    for (std::size_t k = 0; k < p["runs"].size(); ++k) {
      const std::string rp = path + "/runs/" + std::to_string(k);
      const json& run = p["runs"][k];
      c.answer(c.field(run, rp, "answer"), rp + "/answer");
      c.check(run, rp, "correct", V::boolean, true);
      c.check(run, rp, "error", V::string, true);
      c.check(run, rp, "iterations", V::number_unsigned);
      if (decision == "single" && run["route_failures"].empty() && run["iterations"].get<int>() != 0)
        c.fail(rp + "/iterations", "a single-solver route records zero iterations");
      c.check(run, rp, "fallback", V::boolean);
      c.check(run, rp, "cache_hit", V::boolean);
      c.check(run, rp, "support", V::number_float);
      c.check(run, rp, "entropy_history", V::array);
      c.check(run, rp, "failed_rounds", V::number_unsigned);
      c.check(run, rp, "elapsed_s", V::number_float);
      c.check(run, rp, "memory_mb", V::number_float);
      c.check(run, rp, "tool_used", V::boolean);
      c.check(run, rp, "steps", V::array);
      c.check(run, rp, "step_correct", V::array);
      c.check(run, rp, "route_failures", V::array);
      c.check(run, rp, "rounds", V::array);
      for (std::size_t q = 0; q < run["rounds"].size(); ++q) {
        const std::string qp = rp + "/rounds/" + std::to_string(q);
        const json& round = run["rounds"][q];
        c.check(round, qp, "verdicts", V::array);
        c.check(round, qp, "failures", V::array);
        for (std::size_t v = 0; v < round["verdicts"].size(); ++v) {
          const std::string vp = qp + "/verdicts/" + std::to_string(v);
          const json& verdict = round["verdicts"][v];
          c.check(verdict, vp, "solver", V::string);
          c.check(verdict, vp, "role", V::string);
          c.check(verdict, vp, "raw_answer", V::string);
          c.answer(c.field(verdict, vp, "answer"), vp + "/answer");
          c.check(verdict, vp, "raw_score", V::number_float);
          c.check(verdict, vp, "confidence", V::number_float);
          c.check(verdict, vp, "weight", V::number_float);
          c.check(verdict, vp, "latency_ms", V::number_float);
          if (verdict["latency_ms"].get<double>() < 0) c.fail(vp + "/latency_ms", "must be non-negative");
          c.check(verdict, vp, "tool_trace", V::array);
        }
      }
    }
  }
  const json& agg = c.field(r, "", "aggregate");
  c.check(agg, "/aggregate", "evaluated", V::number_unsigned);
  c.check(agg, "/aggregate", "failures", V::number_unsigned);
  c.check(agg, "/aggregate", "metrics", V::object, true);
  if (!agg["metrics"].is_null()) c.metrics(agg["metrics"], "/aggregate/metrics");
}

std::vector<metrics::RunRecord> records_from_report(const json& report) {
  std::vector<metrics::RunRecord> records;
  for (const json& p : report.at("problems")) {
    if (p.at("reference_answer").is_null() || p.at("runs").empty()) continue;
    metrics::RunRecord r;
    r.problem_id = p.at("id").get<std::string>();
    for (const json& run : p["runs"]) r.predictions.push_back(answer_from_json(run.at("answer")));
    r.reference = answer::normalize_or_unparsed(p["reference_answer"].get<std::string>());
    const json& first = p["runs"].front();
    r.step_correct = first.at("step_correct").get<std::vector<bool>>();
    r.steps = steps_from_json(first.at("steps"));
    if (!p.at("reference_steps").is_null()) r.reference_steps = steps_from_json(p["reference_steps"]);
    r.tool_used = first.at("tool_used").get<bool>();
    r.elapsed_s = first.at("elapsed_s").get<double>();
    r.memory_mb = first.at("memory_mb").get<double>();
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace herald::cli
