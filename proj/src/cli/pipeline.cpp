#include "herald/cli/pipeline.hpp"

#include "herald/answer/equivalence.hpp"
#include "herald/answer/simplify.hpp"
#include "herald/common/envelope.hpp"
#include "herald/common/random.hpp"
#include "herald/ensemble/vote.hpp"
#include "herald/ensemble/weights.hpp"
#include "herald/preprocess/notation.hpp"
#include "herald/solvers/prompt.hpp"
#include "herald/solvers/remote.hpp"
#include "herald/solvers/simulated.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <thread>

namespace herald::cli {

namespace {

using preprocess::Problem;
using solvers::SolverKind;
using solvers::SolverSpec;
using solvers::SolverVerdict;

SolverFailure failure_of(const solvers::SolverError& e) {
  const char* kind = dynamic_cast<const solvers::Timeout*>(&e)             ? "timeout"
                     : dynamic_cast<const solvers::MalformedResponse*>(&e) ? "malformed"
                                                                           : "transport";
  return {e.solver_id(), kind, e.what()};
}

Problem standardized(const Problem& p) {
  Problem q = p;
  q.statement_en = preprocess::standardize_notation(p.statement_en);
  if (q.statement_ru) q.statement_ru = preprocess::standardize_notation(*q.statement_ru);
  return q;
}

bool is_correct(const answer::AnswerValue& got, const std::string& reference, double eps) {
  return answer::equivalent(got, answer::normalize_or_unparsed(reference), eps);
}

std::uint64_t run_seed(std::uint64_t seed, int run) { return derive_seed(derive_seed(seed, "run"), static_cast<std::uint64_t>(run)); }

struct Placement {
  std::vector<double> features;
  std::uint64_t signature = 0;
};

}  // namespace

bool ProblemResult::failed() const {
  return std::any_of(runs.begin(), runs.end(), [](const RunOutcome& r) { return r.error.has_value(); });
}

routing::RouterModel load_router(const RunConfig& config) {
  if (!config.router_path) return routing::default_router();
  try {
    return routing::deserialize_router(read_file_bytes(*config.router_path));
  } catch (const std::exception& e) {
    throw ConfigError("router model " + *config.router_path + ": " + e.what());
  }
}

Engine::Engine(RunConfig config, routing::RouterModel router)
    : config_(std::move(config)),
      router_(std::move(router)),
      planes_(routing::kRouteFeatureCount, config_.hyperplane_seed),
      temperature_(config_.solvers.size(), 1.0),
      in_flight_(std::make_unique<std::counting_semaphore<>>(config_.max_in_flight)) {
  validate(config_);
  if (router_.features != routing::kRouteFeatureCount)
    throw ConfigError("router expects " + std::to_string(router_.features) + " features, the pipeline provides " +
                      std::to_string(routing::kRouteFeatureCount));
  if (config_.cache) cache_ = std::make_unique<solvers::ResponseCache>(config_.cache_capacity, config_.min_cosine);
}

SolverVerdict Engine::call(const SolverSpec& spec, const Problem& p, std::uint64_t seed) const {
  if (spec.kind == SolverKind::Simulated) return solvers::solve_simulated(spec, p, seed);
  in_flight_->acquire();
  try {
    SolverVerdict v = solvers::solve_remote(spec, solvers::enhance_prompt(p), spec.timeout_ms);
    in_flight_->release();
    return v;
  } catch (...) {
    in_flight_->release();
    throw;
  }
}

void Engine::weigh(Round& round, std::uint32_t bucket) const {
  std::array<double, kSolverCount> c{}, s{};
  std::array<bool, kSolverCount> present{};
  round.confidence.clear();
  for (const auto& v : round.verdicts) {
    const auto it = std::find_if(config_.solvers.begin(), config_.solvers.end(),
                                 [&](const SolverSpec& spec) { return spec.id == v.solver_id; });
    const double t = it == config_.solvers.end() ? 1.0 : temperature_[it - config_.solvers.begin()];
    const double conf = calibration::calibrate_confidence(v.raw_score, t);
    const auto r = static_cast<std::size_t>(v.role);
    c[r] = conf;
    s[r] = stats_.rate(v.solver_id, bucket);
    present[r] = true;
    round.confidence.push_back(conf);
  }
  const auto w = ensemble::ensemble_weights(c, s, config_.thresholds.gamma).w;
  double total = 0;
  for (std::size_t r = 0; r < kSolverCount; ++r)
    if (present[r]) total += w[r];
  round.weight.clear();
  for (const auto& v : round.verdicts) round.weight.push_back(w[static_cast<std::size_t>(v.role)] / total);
}

Round Engine::run_round(const Problem& p, std::uint32_t bucket, std::uint64_t seed) const {
  const std::size_t n = config_.solvers.size();
  std::vector<std::optional<SolverVerdict>> got(n);
  std::vector<std::optional<SolverFailure>> failed(n);
  auto task = [&](std::size_t i) {
    const SolverSpec& spec = config_.solvers[i];
    try {
      got[i] = call(spec, p, seed);
    } catch (const solvers::SolverError& e) {
      failed[i] = failure_of(e);
    }
  };
  std::vector<std::future<void>> pending;
  for (std::size_t i = 0; i < n; ++i) {
    if (config_.solvers[i].kind == SolverKind::Remote)
      pending.push_back(std::async(std::launch::async, task, i));
    else
      task(i);
  }
  for (auto& f : pending) f.get();

  Round round;
  for (std::size_t i = 0; i < n; ++i) {
    if (got[i]) round.verdicts.push_back(std::move(*got[i]));
    if (failed[i]) round.failures.push_back(std::move(*failed[i]));
  }
  weigh(round, bucket);
  return round;
}

RunOutcome Engine::run_once(const Problem& p, const routing::RoutingDecision& route, std::uint64_t signature,
                            const std::vector<double>& features, std::uint64_t seed) const {
  const Thresholds& thr = config_.thresholds;
  const std::uint32_t bucket = ensemble::bucket_of(signature);
  RunOutcome out;
  bool decided = false;

  if (route.single) {
    const auto it = std::find_if(config_.solvers.begin(), config_.solvers.end(),
                                 [&](const SolverSpec& s) { return s.role == *route.single; });
    if (it != config_.solvers.end()) {
      try {
        Round round;
        round.verdicts.push_back(call(*it, p, derive_seed(seed, std::uint64_t{0})));
        weigh(round, bucket);
        out.answer = round.verdicts.front().answer;
        out.support = 1.0;
        out.rounds.push_back(std::move(round));
        out.memory_mb = it->memory_mb;
        decided = true;
      } catch (const solvers::SolverError& e) {
        out.route_failures.push_back(failure_of(e));
      }
    } else {
      const std::string role(role_name(*route.single));
      out.route_failures.push_back({role, "unconfigured", "no solver configured for role " + role});
    }
  }

  if (!decided) {
    for (const auto& s : config_.solvers) out.memory_mb += s.memory_mb;
    Round first;
    if (cache_) {
      if (auto hit = cache_->lookup(signature, features)) {
        first.verdicts = std::move(*hit);
        weigh(first, bucket);
        out.cache_hit = true;
      }
    }
    if (!out.cache_hit) {
      first = run_round(p, bucket, derive_seed(seed, std::uint64_t{1}));
      if (cache_ && !first.verdicts.empty()) cache_->store(signature, features, first.verdicts);
    }
    out.rounds.push_back(first);

    if (!first.verdicts.empty() && ensemble::needs_fallback(first.confidence, thr.fallback_confidence)) {
      const SolverVerdict& pick = ensemble::fallback_answer(first.verdicts, stats_, bucket);
      out.answer = pick.answer;
      out.iterations = 1;
      out.fallback = true;
      for (std::size_t i = 0; i < first.verdicts.size(); ++i)
        if (&first.verdicts[i] == &pick) out.support = first.weight[i];
    } else {
      ensemble::Sampler sampler = [&](int k) {
        if (k > 1) out.rounds.push_back(run_round(p, bucket, derive_seed(seed, static_cast<std::uint64_t>(k))));
        const Round& r = out.rounds[static_cast<std::size_t>(k - 1)];
        std::vector<ensemble::WeightedAnswer> ballot;
        for (std::size_t i = 0; i < r.verdicts.size(); ++i) ballot.push_back({r.verdicts[i].answer, r.weight[i]});
        return ballot;
      };
      ensemble::VoteConfig vc{thr.eps_H, thr.delta_H, thr.k_max, thr.eps_equiv};
      try {
        ensemble::VoteResult res = ensemble::iterative_vote(sampler, vc);
        out.answer = res.answer;
        out.iterations = res.iterations;
        out.entropy_history = res.state.entropy_history;
        out.failed_rounds = res.state.failed_rounds;
        out.support = res.state.tally.leader().weight / res.state.tally.total();
      } catch (const ensemble::AllUnparsed&) {
        out.answer = answer::AnswerValue::unparsed("");
        out.iterations = static_cast<int>(out.rounds.size());
        out.failed_rounds = out.iterations;
        out.error = "no solver produced a parsable answer";
      }
    }
  }

  for (const Round& r : out.rounds) {
    double slowest = 0;
    for (const auto& v : r.verdicts) {
      slowest = std::max(slowest, v.latency_ms);
      out.tool_used = out.tool_used || v.used_tool();
    }
    out.elapsed_s += slowest / 1000.0;
  }

  const SolverVerdict* source = nullptr;
  for (const Round& r : out.rounds) {
    for (const auto& v : r.verdicts) {
      if (!v.steps.empty() && answer::equivalent(v.answer, out.answer, thr.eps_equiv)) {
        source = &v;
        break;
      }
    }
    if (source) break;
  }
  if (source) out.steps = source->steps;
  if (p.reference_steps) {
    const auto& ref = *p.reference_steps;
    for (std::size_t i = 0; i < std::max(out.steps.size(), ref.size()); ++i)
      out.step_correct.push_back(i < out.steps.size() && i < ref.size() && metrics::step_matches(out.steps[i], ref[i]));
  }
  if (p.reference_answer) out.correct = is_correct(out.answer, *p.reference_answer, thr.eps_equiv);
  return out;
}

namespace {

Placement place(const Problem& p, const solvers::Hyperplanes& planes) {
  Placement pl;
  pl.features = routing::to_vector(routing::extract_features(p));
  pl.signature = solvers::lsh_signature(pl.features, planes);
  return pl;
}

}  // namespace

void Engine::learn_success_stats(const std::vector<Problem>& train) {
  const std::uint64_t seed = derive_seed(config_.seed, "train");
  for (const Problem& raw : train) {
    if (!raw.reference_answer) continue;
    const Problem p = standardized(raw);
    const std::uint32_t bucket = ensemble::bucket_of(place(p, planes_).signature);
    for (const auto& spec : config_.solvers) {
      try {
        const SolverVerdict v = call(spec, p, seed);
        stats_.record(spec.id, bucket, is_correct(v.answer, *p.reference_answer, config_.thresholds.eps_equiv));
      } catch (const solvers::SolverError&) {
      }
    }
  }
}

std::vector<CalibrationOutcome> Engine::fit_calibrations(const std::vector<Problem>& val) {
  std::vector<std::vector<calibration::ScoredSample>> samples(config_.solvers.size());
  const std::uint64_t seed = derive_seed(config_.seed, "calibration");
  for (const Problem& raw : val) {
    if (!raw.reference_answer) continue;
    const Problem p = standardized(raw);
    for (int r = 0; r < config_.runs; ++r) {
      for (std::size_t i = 0; i < config_.solvers.size(); ++i) {
        try {
          const SolverVerdict v = call(config_.solvers[i], p, derive_seed(seed, static_cast<std::uint64_t>(r)));
          samples[i].push_back({v.raw_score, is_correct(v.answer, *p.reference_answer, config_.thresholds.eps_equiv)});
        } catch (const solvers::SolverError&) {
        }
      }
    }
  }

  std::vector<CalibrationOutcome> out;
  for (std::size_t i = 0; i < config_.solvers.size(); ++i) {
    CalibrationOutcome c;
    c.fit.solver_id = config_.solvers[i].id;
    c.fit.fitted_on = static_cast<int>(samples[i].size());
    try {
      c.fit = calibration::fit_temperature(samples[i], config_.calibration_bins, config_.solvers[i].id);
    } catch (const calibration::DegenerateLabels&) {
      c.fallback_reason = "every validation outcome is identical";
    } catch (const std::invalid_argument&) {
      c.fallback_reason = "fewer validation samples than reliability bins";
    }
    if (!samples[i].empty()) {
      c.ece_before = calibration::ece_at(samples[i], 1.0, config_.calibration_bins);
      c.ece_after = calibration::ece_at(samples[i], c.fit.temperature, config_.calibration_bins);
    }
    out.push_back(std::move(c));
  }
  set_temperatures(out);
  return out;
}

void Engine::set_temperatures(const std::vector<CalibrationOutcome>& fits) {
  for (const auto& f : fits)
    for (std::size_t i = 0; i < config_.solvers.size(); ++i)
      if (config_.solvers[i].id == f.fit.solver_id) temperature_[i] = f.fit.temperature;
}

ProblemResult Engine::evaluate(const Problem& raw) const {
  ProblemResult res;
  res.id = raw.id;
  res.category = raw.category;
  res.reference_answer = raw.reference_answer;
  res.reference_steps = raw.reference_steps;
  try {
    const Problem p = standardized(raw);
    const routing::RouteFeatures f = routing::extract_features(p);
    const Placement pl = place(p, planes_);
    res.operator_density = f.operator_density;
    res.route = routing::decide_route(routing::regime_probabilities(router_, pl.features), f.operator_density,
                                      config_.thresholds.conf_threshold, config_.thresholds.tau_sym);
    res.signature = pl.signature;
    res.bucket = ensemble::bucket_of(pl.signature);
    for (int r = 0; r < config_.runs; ++r)
      res.runs.push_back(run_once(p, res.route, pl.signature, pl.features, run_seed(config_.seed, r)));
  } catch (const std::exception& e) {
    RunOutcome failed;
    failed.answer = answer::AnswerValue::unparsed("");
    failed.error = e.what();
    if (raw.reference_answer) failed.correct = false;
    res.runs.assign(static_cast<std::size_t>(config_.runs), failed);
  }
  return res;
}

std::vector<metrics::RunRecord> metric_records(const std::vector<ProblemResult>& problems) {
  std::vector<metrics::RunRecord> records;
  for (const auto& p : problems) {
    if (!p.reference_answer || p.runs.empty()) continue;
    metrics::RunRecord r;
    r.problem_id = p.id;
    for (const auto& run : p.runs) r.predictions.push_back(run.answer);
    r.reference = answer::normalize_or_unparsed(*p.reference_answer);
    const RunOutcome& first = p.runs.front();
    r.step_correct = first.step_correct;
    r.steps = first.steps;
    r.reference_steps = p.reference_steps;
    r.tool_used = first.tool_used;
    r.elapsed_s = first.elapsed_s;
    r.memory_mb = first.memory_mb;
    records.push_back(std::move(r));
  }
  return records;
}

RunResult run_pipeline(const RunConfig& config) {
  validate(config);
  return run_pipeline(config, ingest(config.dataset, config.lenient));
}

RunResult run_pipeline(const RunConfig& config, Dataset dataset) {
  validate(config);
  RunResult result;
  result.config = config;
  result.skipped = std::move(dataset.skipped);
  Split parts = split(std::move(dataset.problems), config.split, derive_seed(config.seed, "split"));
  result.train_size = parts.train.size();
  result.val_size = parts.val.size();
  result.test_size = parts.test.size();

  Engine engine(config, load_router(config));
  engine.learn_success_stats(parts.train);
  result.calibrations = engine.fit_calibrations(parts.val);

  result.problems.resize(parts.test.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < parts.test.size(); i = next++) result.problems[i] = engine.evaluate(parts.test[i]);
  };
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(config.workers), parts.test.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (const auto& p : result.problems) {
    if (p.failed()) ++result.failures;
    if (p.reference_answer) ++result.evaluated;
  }
  const auto records = metric_records(result.problems);
  if (!records.empty()) result.summary = metrics::summarize(records, config.runs, config.thresholds.eps_equiv);
  return result;
}

}  // namespace herald::cli
