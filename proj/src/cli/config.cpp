#include "herald/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace herald::cli {

namespace {

using nlohmann::json;
using solvers::SimulatedProfile;
using solvers::SolverKind;
using solvers::SolverSpec;

SolverSpec simulated(std::string id, SolverRole role, double default_accuracy, std::map<std::string, double> by_category,
                     double median_ms, double memory_mb, double bias) {
  SimulatedProfile p;
  p.default_accuracy = default_accuracy;
  p.accuracy_by_category = std::move(by_category);
  p.signal = 0.5;
  p.scale = 3.0;
  p.bias = bias;
  p.noise = 1.0;
  p.latency_median_ms = median_ms;
  p.latency_log_sigma = 0.3;
  SolverSpec s;
  s.id = std::move(id);
  s.kind = SolverKind::Simulated;
  s.role = role;
  s.memory_mb = memory_mb;
  s.profile = std::move(p);
  return s;
}

// Rejects keys outside `allowed`; "_comments" is always accepted.
void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, _] : j.items())
    if (key != "_comments" && !allowed.count(key)) throw ConfigError("unknown field " + where + "." + key);
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("field " + where + "." + key + ": " + e.what());
  }
}

template <typename T>
void read_optional(const json& j, const char* key, std::optional<T>& out, const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  T value{};
  read(j, key, value, where);
  out = std::move(value);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool in_unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace

RunConfig default_config() {
  RunConfig c;
  c.solvers.push_back(simulated("tool-integrated", SolverRole::ToolIntegrated, 0.80,
                                {{"algebra", 0.88}, {"arithmetic", 0.92}, {"calculus", 0.85}, {"number_theory", 0.84},
                                 {"linear_algebra", 0.86}, {"word_problems", 0.62}},
                                2400, 14500, 2.0));
  c.solvers.push_back(simulated("abstract-reasoning", SolverRole::AbstractReasoning, 0.76,
                                {{"word_problems", 0.86}, {"probability", 0.82}, {"combinatorics", 0.80},
                                 {"geometry", 0.80}, {"arithmetic", 0.84}},
                                1800, 16000, 1.5));
  c.solvers.push_back(simulated("router", SolverRole::Router, 0.66, {}, 900, 14500, 1.0));
  return c;
}

void validate(const RunConfig& c) {
  const Thresholds& t = c.thresholds;
  require(std::isfinite(t.conf_threshold) && t.conf_threshold > 0, "thresholds.conf_threshold must be > 0");
  require(std::isfinite(t.tau_sym) && t.tau_sym > 0, "thresholds.tau_sym must be > 0");
  require(std::isfinite(t.eps_H) && t.eps_H >= 0, "thresholds.eps_H must be >= 0");
  require(std::isfinite(t.delta_H) && t.delta_H >= 0, "thresholds.delta_H must be >= 0");
  require(t.k_max >= 1, "thresholds.k_max must be >= 1");
  require(std::isfinite(t.eps_equiv) && t.eps_equiv > 0, "thresholds.eps_equiv must be > 0");
  require(std::isfinite(t.gamma) && t.gamma >= 0, "thresholds.gamma must be >= 0");
  require(in_unit(t.fallback_confidence), "thresholds.fallback_confidence must lie in [0, 1]");
  require(c.runs >= 1, "runs must be >= 1");
  double total = 0;
  for (double r : c.split) {
    require(in_unit(r), "split ratios must lie in [0, 1]");
    total += r;
  }
  require(std::abs(total - 1.0) < 1e-9, "split ratios must sum to 1");
  require(c.calibration_bins >= 1, "calibration_bins must be >= 1");
  require(c.workers >= 1, "workers must be >= 1");
  require(c.max_in_flight >= 1, "max_in_flight must be >= 1");
  require(c.cache_capacity >= 1, "cache_capacity must be >= 1");
  require(c.min_cosine > -1 && c.min_cosine <= 1, "min_cosine must lie in (-1, 1]");
  require(c.max_failures >= 0, "max_failures must be >= 0");
  require(!c.solvers.empty() && c.solvers.size() <= kSolverCount, "between one and three solvers are required");
  std::set<SolverRole> roles;
  std::set<std::string> ids;
  for (const auto& s : c.solvers) {
    try {
      s.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    require(roles.insert(s.role).second, "two solvers share the role " + std::string(role_name(s.role)));
    require(ids.insert(s.id).second, "duplicate solver id " + s.id);
    require(s.timeout_ms > 0, "solver " + s.id + ": timeout_ms must be > 0");
    require(s.retries >= 0, "solver " + s.id + ": retries must be >= 0");
    require(s.max_tokens > 0, "solver " + s.id + ": max_tokens must be > 0");
    require(std::isfinite(s.memory_mb) && s.memory_mb >= 0, "solver " + s.id + ": memory_mb must be >= 0");
    if (s.profile) {
      const auto& p = *s.profile;
      require(in_unit(p.default_accuracy), "solver " + s.id + ": default_accuracy must lie in [0, 1]");
      for (const auto& [cat, acc] : p.accuracy_by_category)
        require(in_unit(acc), "solver " + s.id + ": accuracy for " + cat + " must lie in [0, 1]");
      require(p.noise >= 0 && p.latency_median_ms >= 0 && p.latency_log_sigma >= 0,
              "solver " + s.id + ": noise and latency parameters must be >= 0");
    }
  }
}

json solver_to_json(const SolverSpec& s) {
  json j{{"id", s.id},
         {"kind", s.kind == SolverKind::Simulated ? "simulated" : "remote"},
         {"role", std::string(role_name(s.role))},
         {"max_tokens", s.max_tokens},
         {"timeout_ms", s.timeout_ms},
         {"retries", s.retries},
         {"memory_mb", s.memory_mb}};
  if (s.kind == SolverKind::Remote) j["endpoint"] = s.endpoint;
  if (s.profile) {
    const auto& p = *s.profile;
    j["profile"] = json{{"default_accuracy", p.default_accuracy},
                        {"accuracy_by_category", p.accuracy_by_category},
                        {"signal", p.signal},
                        {"scale", p.scale},
                        {"bias", p.bias},
                        {"noise", p.noise},
                        {"latency_median_ms", p.latency_median_ms},
                        {"latency_log_sigma", p.latency_log_sigma}};
  }
  return j;
}

SolverSpec solver_from_json(const json& j) {
  check_keys(j, {"id", "kind", "role", "endpoint", "max_tokens", "timeout_ms", "retries", "memory_mb", "profile"},
             "solvers[]");
  SolverSpec s;
  read(j, "id", s.id, "solvers[]");
  const std::string where = "solvers[" + s.id + "]";
  std::string kind = "simulated";
  read(j, "kind", kind, where);
  if (kind == "simulated")
    s.kind = SolverKind::Simulated;
  else if (kind == "remote")
    s.kind = SolverKind::Remote;
  else
    throw ConfigError(where + ".kind must be simulated or remote");
  std::string role;
  read(j, "role", role, where);
  const auto r = role_from_name(role);
  if (!r) throw ConfigError(where + ".role must be tool-integrated, abstract-reasoning or router");
  s.role = *r;
  read(j, "endpoint", s.endpoint, where);
  read(j, "max_tokens", s.max_tokens, where);
  read(j, "timeout_ms", s.timeout_ms, where);
  read(j, "retries", s.retries, where);
  read(j, "memory_mb", s.memory_mb, where);
  if (j.contains("profile") && !j["profile"].is_null()) {
    const json& pj = j["profile"];
    const std::string pw = where + ".profile";
    check_keys(pj,
               {"default_accuracy", "accuracy_by_category", "signal", "scale", "bias", "noise", "latency_median_ms",
                "latency_log_sigma"},
               pw);
    SimulatedProfile p;
    read(pj, "default_accuracy", p.default_accuracy, pw);
    read(pj, "accuracy_by_category", p.accuracy_by_category, pw);
    read(pj, "signal", p.signal, pw);
    read(pj, "scale", p.scale, pw);
    read(pj, "bias", p.bias, pw);
    read(pj, "noise", p.noise, pw);
    read(pj, "latency_median_ms", p.latency_median_ms, pw);
    read(pj, "latency_log_sigma", p.latency_log_sigma, pw);
    s.profile = std::move(p);
  }
  return s;
}

json to_json(const RunConfig& c, bool with_comments) {
  const Thresholds& t = c.thresholds;
  json thresholds{{"conf_threshold", t.conf_threshold}, {"tau_sym", t.tau_sym},     {"eps_H", t.eps_H},
                  {"delta_H", t.delta_H},               {"k_max", t.k_max},         {"eps_equiv", t.eps_equiv},
                  {"gamma", t.gamma},                   {"fallback_confidence", t.fallback_confidence}};
  json solvers = json::array();
  for (const auto& s : c.solvers) solvers.push_back(solver_to_json(s));
  json j{{"dataset", c.dataset},
         {"output", c.output},
         {"solvers", solvers},
         {"thresholds", thresholds},
         {"seed", c.seed},
         {"runs", c.runs},
         {"split", c.split},
         {"calibration_bins", c.calibration_bins},
         {"router_path", c.router_path ? json(*c.router_path) : json(nullptr)},
         {"workers", c.workers},
         {"max_in_flight", c.max_in_flight},
         {"cache", c.cache},
         {"cache_capacity", c.cache_capacity},
         {"min_cosine", c.min_cosine},
         {"hyperplane_seed", c.hyperplane_seed},
         {"lenient", c.lenient},
         {"max_failures", c.max_failures}};
  if (with_comments) {
    j["thresholds"]["_comments"] = json{
        {"conf_threshold", "router confidence for a single-solver route; published value 0.8"},
        {"tau_sym", "operator density above which a symbolic route is allowed; published value 0.25"},
        {"eps_H", "vote entropy below which voting stops; published value 0.1"},
        {"delta_H", "entropy change below which voting stops; not published, chosen 0.01"},
        {"k_max", "maximum voting rounds; published value 48"},
        {"eps_equiv", "relative tolerance of answer equivalence; published value 1e-6"},
        {"gamma", "sharpness of the ensemble softmax; not published, chosen 2.0"},
        {"fallback_confidence", "all calibrated confidences below this trigger the fallback; chosen 0.2"}};
    j["_comments"] = json{
        {"dataset", "JSONL problems, one object per line"},
        {"output", "report path; empty writes to stdout"},
        {"solvers", "one to three solvers with distinct roles"},
        {"runs", "repeated runs per test problem for consistency; published value 10"},
        {"split", "train, validation and test fractions; published split 0.8/0.1/0.1"},
        {"calibration_bins", "reliability bins for ECE; published value 15"},
        {"router_path", "HRLD router model; null uses the built-in router"},
        {"workers", "problems evaluated concurrently"},
        {"max_in_flight", "concurrent remote solver requests"},
        {"cache", "LSH response cache; off by default"},
        {"cache_capacity", "LRU capacity of the response cache; chosen 4096"},
        {"min_cosine", "feature cosine required for a cache hit; chosen 0.95"},
        {"hyperplane_seed", "seed of the LSH hyperplanes"},
        {"lenient", "skip malformed dataset lines instead of failing"},
        {"max_failures", "per-problem failures tolerated before exit code 4"}};
  }
  return j;
}

RunConfig config_from_json(const json& j) {
  check_keys(j,
             {"dataset", "output", "solvers", "thresholds", "seed", "runs", "split", "calibration_bins", "router_path", "workers", "max_in_flight", "cache", "cache_capacity", "min_cosine", "hyperplane_seed",
              "lenient", "max_failures"},
             "config");
  RunConfig c = default_config();
  read(j, "dataset", c.dataset, "config");
  read(j, "output", c.output, "config");
  if (j.contains("solvers")) {
    if (!j["solvers"].is_array()) throw ConfigError("config.solvers must be an array");
    c.solvers.clear();
    for (const auto& s : j["solvers"]) c.solvers.push_back(solver_from_json(s));
  }
  if (j.contains("thresholds")) {
    const json& t = j["thresholds"];
    check_keys(t, {"conf_threshold", "tau_sym", "eps_H", "delta_H", "k_max", "eps_equiv", "gamma", "fallback_confidence"},
               "thresholds");
    read(t, "conf_threshold", c.thresholds.conf_threshold, "thresholds");
    read(t, "tau_sym", c.thresholds.tau_sym, "thresholds");
    read(t, "eps_H", c.thresholds.eps_H, "thresholds");
    read(t, "delta_H", c.thresholds.delta_H, "thresholds");
    read(t, "k_max", c.thresholds.k_max, "thresholds");
    read(t, "eps_equiv", c.thresholds.eps_equiv, "thresholds");
    read(t, "gamma", c.thresholds.gamma, "thresholds");
    read(t, "fallback_confidence", c.thresholds.fallback_confidence, "thresholds");
  }
  read(j, "seed", c.seed, "config");
  read(j, "runs", c.runs, "config");
  read(j, "split", c.split, "config");
  read(j, "calibration_bins", c.calibration_bins, "config");
  read_optional(j, "router_path", c.router_path, "config");
  read(j, "workers", c.workers, "config");
  read(j, "max_in_flight", c.max_in_flight, "config");
  read(j, "cache", c.cache, "config");
  read(j, "cache_capacity", c.cache_capacity, "config");
  read(j, "min_cosine", c.min_cosine, "config");
  read(j, "hyperplane_seed", c.hyperplane_seed, "config");
  read(j, "lenient", c.lenient, "config");
  read(j, "max_failures", c.max_failures, "config");
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

}  // namespace herald::cli
