#include "herald/answer/equivalence.hpp"
#include "herald/answer/parse.hpp"
#include "herald/answer/simplify.hpp"
#include "herald/calibration/calibration.hpp"
#include "herald/cli/config.hpp"
#include "herald/cli/dataset.hpp"
#include "herald/cli/pipeline.hpp"
#include "herald/cli/report.hpp"
#include "herald/common/envelope.hpp"
#include "herald/common/random.hpp"
#include "herald/policy/trainer.hpp"
#include "herald/routing/distill.hpp"
#include "herald/routing/quantize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace herald;
using nlohmann::json;

enum Exit { kOk = 0, kFailure = 1, kConfigError = 2, kDatasetError = 3, kTooManyFailures = 4 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cli::IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cli::IoError("cannot write " + path);
  out << text;
}

std::vector<json> read_jsonl(const std::string& path) {
  std::vector<json> rows;
  std::istringstream in(read_file(path));
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const json::parse_error&) {
      throw cli::SchemaError(number, "not valid JSON");
    }
  }
  return rows;
}

// Flags shared by `run` and `calibrate` that override the config file.
struct RunFlags {
  std::string config_path;
  std::optional<std::string> dataset, output, router;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs, workers, k_max, max_failures, bins;
  std::optional<double> conf_threshold, tau_sym, eps_H, delta_H, eps_equiv, gamma;
  bool cache = false;
  bool lenient = false;

  void attach(CLI::App* app) {
    app->add_option("-c,--config", config_path, "JSON config file");
    app->add_option("--dataset", dataset, "JSONL dataset");
    app->add_option("-o,--output", output, "report path, - for stdout");
    app->add_option("--router", router, "HRLD router model");
    app->add_option("--seed", seed, "master seed");
    app->add_option("--runs", runs, "runs per test problem")->check(CLI::PositiveNumber);
    app->add_option("--workers", workers, "problems evaluated concurrently")->check(CLI::PositiveNumber);
    app->add_option("--conf-threshold", conf_threshold, "router confidence threshold");
    app->add_option("--tau-sym", tau_sym, "operator density threshold");
    app->add_option("--eps-h", eps_H, "entropy stopping threshold");
    app->add_option("--delta-h", delta_H, "entropy change stopping threshold");
    app->add_option("--k-max", k_max, "maximum voting rounds");
    app->add_option("--eps-equiv", eps_equiv, "answer equivalence tolerance");
    app->add_option("--gamma", gamma, "ensemble softmax sharpness");
    app->add_option("--bins", bins, "calibration bins");
    app->add_option("--max-failures", max_failures, "failures tolerated before exit code 4");
    app->add_flag("--cache", cache, "enable the LSH response cache");
    app->add_flag("--lenient", lenient, "skip malformed dataset lines");
  }

  cli::RunConfig resolve() const {
    cli::RunConfig c = config_path.empty() ? cli::default_config() : cli::load_config(config_path);
    if (dataset) c.dataset = *dataset;
    if (output) c.output = *output;
    if (router) c.router_path = *router;
    if (seed) c.seed = *seed;
    if (runs) c.runs = *runs;
    if (workers) c.workers = *workers;
    if (conf_threshold) c.thresholds.conf_threshold = *conf_threshold;
    if (tau_sym) c.thresholds.tau_sym = *tau_sym;
    if (eps_H) c.thresholds.eps_H = *eps_H;
    if (delta_H) c.thresholds.delta_H = *delta_H;
    if (k_max) c.thresholds.k_max = *k_max;
    if (eps_equiv) c.thresholds.eps_equiv = *eps_equiv;
    if (gamma) c.thresholds.gamma = *gamma;
    if (bins) c.calibration_bins = *bins;
    if (max_failures) c.max_failures = *max_failures;
    if (cache) c.cache = true;
    if (lenient) c.lenient = true;
    cli::validate(c);
    if (c.dataset.empty()) throw cli::ConfigError("no dataset given");
    return c;
  }
};

int cmd_run(const RunFlags& flags) {
  const cli::RunConfig config = flags.resolve();
  const cli::RunResult result = cli::run_pipeline(config);
  write_output(config.output, cli::dump_report(cli::build_report(result)));
  for (const auto& s : result.skipped) std::cerr << "skipped line " << s.line << ": " << s.message << "\n";
  if (result.failures > config.max_failures) {
    std::cerr << result.failures << " problems failed (limit " << config.max_failures << ")\n";
    return kTooManyFailures;
  }
  return kOk;
}

int cmd_calibrate(const RunFlags& flags, const std::string& samples_path, int bins) {
  json out;
  if (!samples_path.empty()) {
    std::vector<calibration::ScoredSample> samples;
    for (const json& row : read_jsonl(samples_path))
      samples.push_back({row.at("score").get<double>(), row.at("correct").get<bool>()});
    const auto fit = calibration::fit_temperature(samples, bins);
    out = {{"temperature", fit.temperature},
           {"fitted_on", fit.fitted_on},
           {"ece_before", calibration::ece_at(samples, 1.0, bins)},
           {"ece_after", calibration::ece_at(samples, fit.temperature, bins)}};
  } else {
    const cli::RunConfig config = flags.resolve();
    auto data = cli::ingest(config.dataset, config.lenient);
    auto parts = cli::split(std::move(data.problems), config.split, derive_seed(config.seed, "split"));
    cli::Engine engine(config, cli::load_router(config));
    out = json::array();
    for (const auto& c : engine.fit_calibrations(parts.val))
      out.push_back(json{{"solver", c.fit.solver_id},
                     {"temperature", c.fit.temperature},
                     {"fitted_on", c.fit.fitted_on},
                     {"fallback_reason", c.fallback_reason ? json(*c.fallback_reason) : json(nullptr)},
                     {"ece_before", c.ece_before ? json(*c.ece_before) : json(nullptr)},
                     {"ece_after", c.ece_after ? json(*c.ece_after) : json(nullptr)}});
  }
  std::cout << out.dump(2) << "\n";
  return kOk;
}

struct DistillFlags {
  std::string data_path;
  std::size_t synthetic = 0;
  std::uint64_t seed = 7;
  routing::DistillHyper hyper;
  bool quantize = false;
  std::string out_path;
};

int cmd_distill(const DistillFlags& f) {
  routing::DistillSet train, held_out;
  if (!f.data_path.empty()) {
    for (const json& row : read_jsonl(f.data_path)) {
      train.features.push_back(row.at("features").get<std::vector<double>>());
      const auto t = row.at("teacher_logits").get<std::vector<double>>();
      if (t.size() != 3) throw cli::SchemaError(static_cast<int>(train.features.size()), "teacher_logits needs 3 entries");
      train.teacher_logits.push_back({t[0], t[1], t[2]});
      const auto best = static_cast<std::size_t>(std::max_element(t.begin(), t.end()) - t.begin());
      train.hard_labels.push_back(row.value("label", best));
    }
  } else if (f.synthetic > 0) {
    train = routing::synthetic_routing_set(f.synthetic, f.seed, derive_seed(f.seed, "train"));
    held_out = routing::synthetic_routing_set(f.synthetic / 2 + 1, f.seed, derive_seed(f.seed, "held-out"));
  } else {
    throw cli::ConfigError("distill-router needs --data or --synthetic");
  }
  routing::RouterModel model = routing::distill_router(train, f.hyper);
  json out{{"train_agreement", routing::teacher_agreement(model, train)}};
  if (!held_out.features.empty()) out["held_out_agreement"] = routing::teacher_agreement(model, held_out);
  if (f.quantize) {
    model = routing::quantize_weights(model);
    out["quantized"] = true;
  }
  if (!f.out_path.empty()) write_file_bytes(f.out_path, routing::serialize(model));
  std::cout << out.dump(2) << "\n";
  return kOk;
}

int cmd_train_policy(const policy::TrainConfig& tc, int eval_episodes, std::uint64_t eval_seed,
                     const std::string& out_path) {
  const policy::TrainResult trained = policy::train_policy(tc);
  const policy::QModel& q = trained.model;
  const auto learned =
      policy::evaluate_policy([&](const policy::PolicyState& s) { return policy::greedy_action(q, s); }, eval_episodes,
                              eval_seed, tc.env);
  const auto baseline = policy::evaluate_policy(policy::always(policy::Action::Compute), eval_episodes, eval_seed, tc.env);
  auto stats = [](const policy::EvalStats& e) {
    return json{{"mean_tool_calls", e.mean_tool_calls}, {"accuracy", e.accuracy}, {"mean_reward", e.mean_reward}};
  };
  json out{{"episodes", trained.episodes},
           {"gradient_steps", trained.gradient_steps},
           {"policy", stats(learned)},
           {"always_compute", stats(baseline)},
           {"tool_call_reduction",
            baseline.mean_tool_calls > 0 ? 1.0 - learned.mean_tool_calls / baseline.mean_tool_calls : 0.0}};
  if (!out_path.empty()) write_file_bytes(out_path, policy::serialize(q));
  std::cout << out.dump(2) << "\n";
  return kOk;
}

int cmd_grade(const std::string& pairs_path, const std::vector<std::string>& pair, double eps, bool comma) {
  const auto locale = comma ? answer::Locale::Comma : answer::Locale::Point;
  auto grade = [&](const std::string& a, const std::string& b) {
    const auto va = answer::normalize_or_unparsed(answer::extract_answer_text(a), locale);
    const auto vb = answer::normalize_or_unparsed(answer::extract_answer_text(b), locale);
    return json{{"a", cli::answer_to_json(va)}, {"b", cli::answer_to_json(vb)}, {"equivalent", answer::equivalent(va, vb, eps)}};
  };
  if (!pairs_path.empty()) {
    int agree = 0, total = 0;
    for (const json& row : read_jsonl(pairs_path)) {
      const json g = grade(row.at("a").get<std::string>(), row.at("b").get<std::string>());
      std::cout << g.dump() << "\n";
      ++total;
      if (g["equivalent"].get<bool>()) ++agree;
    }
    std::cerr << agree << " of " << total << " pairs equivalent\n";
  } else {
    if (pair.size() != 2) throw cli::ConfigError("grade needs --pairs or exactly two answers");
    std::cout << grade(pair[0], pair[1]).dump(2) << "\n";
  }
  return kOk;
}

int cmd_report(const std::string& path, int runs) {
  json report;
  try {
    report = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw cli::ReportSchemaError("", std::string("not valid JSON: ") + e.what());
  }
  cli::validate_report(report);
  if (runs <= 0) runs = report.at("config").value("runs", metrics::kDefaultRuns);
  const double eps = report["config"]["thresholds"].value("eps_equiv", answer::kDefaultEpsEquiv);
  const auto records = cli::records_from_report(report);
  json out{{"records", records.size()}};
  out["metrics"] = records.empty() ? json(nullptr) : cli::summary_to_json(metrics::summarize(records, runs, eps));
  std::cout << out.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"herald: routed, calibrated ensemble solving of math problems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(herald::cli::kHeraldVersion));

  RunFlags run_flags;
  bool print_default = false;
  auto* run = app.add_subcommand("run", "evaluate a dataset and write a JSON report");
  run_flags.attach(run);
  run->add_flag("--print-default-config", print_default, "print the default config with comments and exit");

  RunFlags cal_flags;
  std::string samples_path;
  int sample_bins = herald::calibration::kDefaultBins;
  auto* calibrate = app.add_subcommand("calibrate", "fit temperatures on scored samples or a validation split");
  cal_flags.attach(calibrate);
  calibrate->add_option("--samples", samples_path, "JSONL of {score, correct}");
  calibrate->add_option("--sample-bins", sample_bins, "bins for --samples")->check(CLI::PositiveNumber);

  DistillFlags distill_flags;
  auto* distill = app.add_subcommand("distill-router", "distill teacher routing logits into the linear router");
  distill->add_option("--data", distill_flags.data_path, "JSONL of {features, teacher_logits, label?}");
  distill->add_option("--synthetic", distill_flags.synthetic, "rows of seeded synthetic data instead of --data");
  distill->add_option("--seed", distill_flags.seed, "seed for synthetic data");
  distill->add_option("--alpha", distill_flags.hyper.alpha, "hard-label weight");
  distill->add_option("--tau", distill_flags.hyper.tau, "distillation temperature");
  distill->add_option("--steps", distill_flags.hyper.steps, "gradient steps");
  distill->add_option("--lr", distill_flags.hyper.lr, "initial learning rate");
  distill->add_flag("--quantize", distill_flags.quantize, "store 8-bit weights");
  distill->add_option("-o,--out", distill_flags.out_path, "HRLD output file");

  herald::policy::TrainConfig train_cfg;
  int eval_episodes = 2000;
  std::uint64_t eval_seed = 777;
  std::string policy_out;
  auto* train = app.add_subcommand("train-policy", "train the tool-use policy on the synthetic environment");
  train->add_option("--steps", train_cfg.steps, "environment steps");
  train->add_option("--seed", train_cfg.seed, "training seed");
  train->add_option("--lr", train_cfg.lr, "learning rate");
  train->add_option("--gamma", train_cfg.gamma, "discount");
  train->add_option("--eval-episodes", eval_episodes, "evaluation episodes");
  train->add_option("--eval-seed", eval_seed, "evaluation seed");
  train->add_option("-o,--out", policy_out, "HRLD output file");

  std::string pairs_path;
  std::vector<std::string> pair;
  double grade_eps = herald::answer::kDefaultEpsEquiv;
  bool comma = false;
  auto* grade = app.add_subcommand("grade", "check answer pairs for equivalence");
  grade->add_option("--pairs", pairs_path, "JSONL of {a, b}");
  grade->add_option("answers", pair, "two answers to compare");
  grade->add_option("--eps", grade_eps, "relative tolerance")->check(CLI::PositiveNumber);
  grade->add_flag("--comma", comma, "read a comma as the decimal separator");

  std::string report_path;
  int report_runs = 0;
  auto* report = app.add_subcommand("report", "validate a report and recompute its metrics");
  report->add_option("report", report_path, "report JSON")->required();
  report->add_option("--runs", report_runs, "runs per problem; defaults to the report's config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) {
      if (print_default) {
        std::cout << herald::cli::to_json(herald::cli::default_config(), true).dump(2) << "\n";
        return kOk;
      }
      return cmd_run(run_flags);
    }
    if (*calibrate) return cmd_calibrate(cal_flags, samples_path, sample_bins);
    if (*distill) return cmd_distill(distill_flags);
    if (*train) return cmd_train_policy(train_cfg, eval_episodes, eval_seed, policy_out);
    if (*grade) return cmd_grade(pairs_path, pair, grade_eps, comma);
    if (*report) return cmd_report(report_path, report_runs);
  } catch (const herald::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const herald::cli::IoError& e) {
    std::cerr << "dataset error: " << e.what() << "\n";
    return kDatasetError;
  } catch (const herald::cli::SchemaError& e) {
    std::cerr << "dataset error: " << e.what() << "\n";
    return kDatasetError;
  } catch (const herald::cli::ReportSchemaError& e) {
    std::cerr << "report error: " << e.what() << "\n";
    return kDatasetError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
