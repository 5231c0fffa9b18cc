#pragma once

#include "herald/policy/env.hpp"
#include "herald/policy/qmodel.hpp"
#include "herald/policy/replay.hpp"

#include <cstdint>

namespace herald::policy {

struct TrainConfig {
  int steps = 20'000;  // environment steps, one gradient step each after warm-up
  std::size_t batch = 32;
  double gamma = 0.95;
  double lr = 0.2;
  int sync_every = 100;
  std::size_t capacity = kReplayCapacity;
  std::size_t warmup = 256;
  double eps_start = 1.0;
  double eps_end = 0.05;
  int eps_decay_steps = 10'000;
  std::uint64_t seed = 2024;
  EnvConfig env{};
};

struct TrainResult {
  QModel model;
  int episodes = 0;
  int gradient_steps = 0;
};

TrainResult train_policy(const TrainConfig& config = {});

struct EvalStats {
  int episodes = 0;
  double mean_tool_calls = 0;
  double accuracy = 0;
  double mean_reward = 0;
};

// Greedy rollouts on problems seeded from `seed`, episode i using
// derive_seed(seed, i). Same seed, same problems, whatever the chooser.
EvalStats evaluate_policy(const Chooser& choose, int episodes, std::uint64_t seed, const EnvConfig& env = {});

Chooser always(Action a);

}  // namespace herald::policy
