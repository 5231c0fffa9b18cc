#pragma once

#include "herald/policy/qmodel.hpp"
#include "herald/policy/reward.hpp"
#include "herald/policy/state.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace herald::policy {

inline constexpr int kMaxEpisodeSteps = 32;

// Desk-scale stand-in for a multi-step solution. Each step has a hidden
// complexity c in [0, 1]; the state exposes it through the last-model
// confidence (1 - c) and the ensemble entropy, a logistic in c centred on
// reason_limit with scale 0.05, times ln 3. `reason`
// succeeds iff c < reason_limit, `hybrid` iff c < hybrid_limit, `compute`
// always. A failed step ends the episode with a wrong final answer.
struct EnvConfig {
  double reason_limit = 0.4;
  double hybrid_limit = 0.78;
  // Step complexity mixture: easy U[0, 0.3], medium U[0.5, 0.7],
  // hard U[0.85, 1].
  double p_easy = 0.5;
  double p_medium = 0.2;
  // Latency in seconds and output tokens per action.
  double reason_s = 1.0;
  double hybrid_s = 5.0;
  double compute_s = 15.0;
  double reason_tokens = 80;
  double hybrid_tokens = 40;
  double compute_tokens = 20;
  int min_steps = 2;
  int max_steps = 8;
  int truncate_at = kMaxEpisodeSteps;
  double deadline_s = 30.0;
  double tau_time = kDefaultTauTime;
  RewardWeights weights{};
};

struct StepOutcome {
  PolicyState next{};
  double reward = 0;
  bool terminal = false;
  bool step_correct = false;
};

class SyntheticEnv {
 public:
  explicit SyntheticEnv(EnvConfig config = {}) : config_(config) {}

  // Draws a new problem. Deterministic per seed.
  PolicyState reset(std::uint64_t seed);
  StepOutcome step(Action a);

  const EnvConfig& config() const { return config_; }
  int steps_taken() const { return step_; }
  int tool_calls() const { return tool_calls_; }
  bool solved() const { return solved_; }
  double elapsed_s() const { return elapsed_s_; }
  const std::vector<double>& complexities() const { return complexity_; }

 private:
  PolicyState observe() const;

  EnvConfig config_;
  std::vector<double> complexity_;
  int problem_tokens_ = 0;
  double problem_density_ = 0;
  double problem_magnitude_ = 0;
  std::size_t topic_ = 0;
  int step_ = 0;
  int tool_calls_ = 0;
  int tool_successes_ = 0;
  double tool_ms_ = 0;
  double elapsed_s_ = 0;
  double reasoning_tokens_ = 0;
  bool done_ = true;
  bool solved_ = false;
};

using Chooser = std::function<Action(const PolicyState&)>;

struct Trajectory {
  std::vector<Transition> transitions;
  int steps = 0;
  int tool_calls = 0;
  bool correct = false;
  double total_reward = 0;
};

// With probability eps_greedy a uniformly random action replaces the
// chooser's. The problem and the exploration draws both derive from
// rng_seed.
Trajectory run_episode(SyntheticEnv& env, const Chooser& choose, double eps_greedy, std::uint64_t rng_seed);
Trajectory run_episode(SyntheticEnv& env, const QModel& q, double eps_greedy, std::uint64_t rng_seed);

}  // namespace herald::policy
