#include "herald/policy/trainer.hpp"

#include "herald/common/random.hpp"

#include <algorithm>

namespace herald::policy {

TrainResult train_policy(const TrainConfig& config) {
  if (config.steps < 0 || config.batch == 0 || config.sync_every < 1) throw std::invalid_argument("bad training config");
  TrainResult out;
  QModel& q = out.model;
  ReplayBuffer buffer(config.capacity, kPriorityExponent);
  SyntheticEnv env(config.env);
  Rng explore(derive_seed(config.seed, "explore"));

  PolicyState s = env.reset(derive_seed(config.seed, std::uint64_t{0}));
  out.episodes = 1;
  for (int t = 0; t < config.steps; ++t) {
    const double progress = std::min(1.0, static_cast<double>(t) / std::max(config.eps_decay_steps, 1));
    const double eps = config.eps_start + (config.eps_end - config.eps_start) * progress;
    Action a = greedy_action(q, s);
    if (explore.uniform() < eps) a = static_cast<Action>(explore.below(kActionCount));
    const StepOutcome o = env.step(a);
    buffer.add_with_max_priority({s, a, o.reward, o.next, o.terminal, 1.0});
    if (o.terminal) {
      s = env.reset(derive_seed(config.seed, static_cast<std::uint64_t>(out.episodes)));
      ++out.episodes;
    } else {
      s = o.next;
    }

    if (buffer.size() < config.warmup) continue;
    const SampledBatch sampled =
        sample_prioritized(buffer, config.batch, derive_seed(config.seed, static_cast<std::uint64_t>(t) + 0x5A17));
    std::vector<WeightedTransition> batch;
    batch.reserve(sampled.indices.size());
    for (std::size_t k = 0; k < sampled.indices.size(); ++k) {
      batch.push_back({&buffer.at(sampled.indices[k]), sampled.importance[k]});
    }
    const auto deltas = train_step(q, batch, config.lr, config.gamma);
    for (std::size_t k = 0; k < deltas.size(); ++k) buffer.update_from_td(sampled.indices[k], deltas[k]);
    ++out.gradient_steps;
    if (out.gradient_steps % config.sync_every == 0) sync_target(q);
  }
  sync_target(q);
  return out;
}

EvalStats evaluate_policy(const Chooser& choose, int episodes, std::uint64_t seed, const EnvConfig& env_config) {
  if (episodes < 1) throw std::invalid_argument("need at least one episode");
  SyntheticEnv env(env_config);
  EvalStats st;
  st.episodes = episodes;
  int tools = 0;
  int correct = 0;
  double reward_sum = 0;
  for (int i = 0; i < episodes; ++i) {
    const Trajectory t = run_episode(env, choose, 0.0, derive_seed(seed, static_cast<std::uint64_t>(i)));
    tools += t.tool_calls;
    correct += t.correct ? 1 : 0;
    reward_sum += t.total_reward;
  }
  st.mean_tool_calls = static_cast<double>(tools) / episodes;
  st.accuracy = static_cast<double>(correct) / episodes;
  st.mean_reward = reward_sum / episodes;
  return st;
}

Chooser always(Action a) {
  return [a](const PolicyState&) { return a; };
}

}  // namespace herald::policy
