#include "herald/policy/env.hpp"

#include "herald/common/random.hpp"

#include <cmath>
#include <stdexcept>

namespace herald::policy {

namespace {

struct ActionCost {
  double seconds;
  double tokens;
  double tool_ms;
};

// Tool time is the part of the latency spent outside the model.
ActionCost cost_of(Action a, const EnvConfig& c) {
  switch (a) {
    case Action::Reason: return {c.reason_s, c.reason_tokens, 0};
    case Action::Hybrid: return {c.hybrid_s, c.hybrid_tokens, 600 * c.hybrid_s};
    case Action::Compute: return {c.compute_s, c.compute_tokens, 800 * c.compute_s};
  }
  return {0, 0, 0};
}

}  // namespace

PolicyState SyntheticEnv::reset(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "env"));
  const int span = config_.max_steps - config_.min_steps + 1;
  if (config_.min_steps < 1 || span < 1) throw std::invalid_argument("bad step range");
  const int n = config_.min_steps + static_cast<int>(rng.below(static_cast<std::uint64_t>(span)));
  complexity_.clear();
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    if (u < config_.p_easy) {
      complexity_.push_back(rng.uniform(0.0, 0.3));
    } else if (u < config_.p_easy + config_.p_medium) {
      complexity_.push_back(rng.uniform(0.5, 0.7));
    } else {
      complexity_.push_back(rng.uniform(0.85, 1.0));
    }
  }
  problem_tokens_ = 20 + static_cast<int>(rng.below(300));
  problem_density_ = rng.uniform(0.0, 0.5);
  problem_magnitude_ = std::pow(10.0, rng.uniform(0.0, 6.0));
  topic_ = static_cast<std::size_t>(rng.below(kTopicCount));
  step_ = 0;
  tool_calls_ = 0;
  tool_successes_ = 0;
  tool_ms_ = 0;
  elapsed_s_ = 0;
  reasoning_tokens_ = 0;
  done_ = false;
  solved_ = false;
  return observe();
}

PolicyState SyntheticEnv::observe() const {
  StateInputs in;
  in.token_length = problem_tokens_;
  in.operator_density = problem_density_;
  in.max_magnitude = problem_magnitude_;
  in.topic = topic_;
  in.step_index = step_;
  in.reasoning_length = reasoning_tokens_;
  const double c = step_ < static_cast<int>(complexity_.size()) ? complexity_[static_cast<std::size_t>(step_)] : 0.0;
  in.last_confidence = 1.0 - c;
  // The solvers start to disagree once a step outgrows plain reasoning.
  in.ensemble_entropy = std::log(3.0) / (1.0 + std::exp(-(c - config_.reason_limit) / 0.05));
  in.tool_calls = tool_calls_;
  in.mean_tool_success = tool_calls_ == 0 ? 0.0 : static_cast<double>(tool_successes_) / tool_calls_;
  in.tool_ms = tool_ms_;
  return make_state(in);
}

StepOutcome SyntheticEnv::step(Action a) {
  if (done_) throw std::logic_error("episode is over; call reset");
  const double c = complexity_[static_cast<std::size_t>(step_)];
  bool ok = true;
  if (a == Action::Reason) ok = c < config_.reason_limit;
  if (a == Action::Hybrid) ok = c < config_.hybrid_limit;

  const ActionCost cost = cost_of(a, config_);
  elapsed_s_ += cost.seconds;
  reasoning_tokens_ += cost.tokens;
  if (is_tool_call(a)) {
    ++tool_calls_;
    tool_ms_ += cost.tool_ms;
    if (ok) ++tool_successes_;
  }
  ++step_;

  StepOutcome out;
  out.step_correct = ok;
  const bool finished = ok && step_ == static_cast<int>(complexity_.size());
  const bool truncated = ok && !finished && step_ >= config_.truncate_at;
  out.terminal = !ok || finished || truncated;
  solved_ = finished;
  // Per-step reward; the deadline applies to the whole trajectory.
  out.reward = reward(ok, cost.seconds, brevity(cost.tokens), config_.weights, config_.tau_time);
  if (out.terminal && elapsed_s_ > config_.deadline_s) out.reward += kDeadlinePenalty;
  done_ = out.terminal;
  out.next = observe();
  return out;
}

Trajectory run_episode(SyntheticEnv& env, const Chooser& choose, double eps_greedy, std::uint64_t rng_seed) {
  Rng explore(derive_seed(rng_seed, "explore"));
  Trajectory t;
  PolicyState s = env.reset(rng_seed);
  while (true) {
    Action a = choose(s);
    if (eps_greedy > 0 && explore.uniform() < eps_greedy) a = static_cast<Action>(explore.below(kActionCount));
    const StepOutcome o = env.step(a);
    t.transitions.push_back({s, a, o.reward, o.next, o.terminal, 1.0});
    t.total_reward += o.reward;
    if (o.terminal) break;
    s = o.next;
  }
  t.steps = env.steps_taken();
  t.tool_calls = env.tool_calls();
  t.correct = env.solved();
  return t;
}

Trajectory run_episode(SyntheticEnv& env, const QModel& q, double eps_greedy, std::uint64_t rng_seed) {
  return run_episode(env, [&q](const PolicyState& s) { return greedy_action(q, s); }, eps_greedy, rng_seed);
}

}  // namespace herald::policy
