#pragma once

#include "herald/policy/state.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace herald::policy {

enum class Action { Reason = 0, Compute = 1, Hybrid = 2 };
inline constexpr std::size_t kActionCount = 3;

std::string_view action_name(Action a);

// Compute and hybrid both invoke the external tool.
bool is_tool_call(Action a);

struct LinearQ {
  std::array<double, kActionCount * kStateDim> w{};
  std::array<double, kActionCount> b{};

  double value(const PolicyState& s, Action a) const;
  std::array<double, kActionCount> values(const PolicyState& s) const;

  friend bool operator==(const LinearQ&, const LinearQ&) = default;
};

struct QModel {
  LinearQ online;
  LinearQ target;  // changes only through sync_target

  friend bool operator==(const QModel&, const QModel&) = default;
};

struct Transition {
  PolicyState s{};
  Action a = Action::Reason;
  double r = 0;
  PolicyState s_next{};
  bool terminal = false;
  double priority = 1.0;
};

class NonFiniteUpdate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::array<double, kActionCount> action_probabilities(const QModel& q, const PolicyState& s);

Action greedy_action(const QModel& q, const PolicyState& s);

// r + gamma * max_a' Q_target(s', a') - Q_online(s, a); the bootstrap term
// is dropped for terminal transitions.
double td_error(const QModel& q, const Transition& tr, double gamma);

struct WeightedTransition {
  const Transition* transition;
  double importance = 1.0;
};

// Semi-gradient step on the online weights, averaged over the batch:
// w += lr * importance * delta * dQ/dw. Returns the TD errors computed
// before the update.
std::vector<double> train_step(QModel& q, std::span<const WeightedTransition> batch, double lr, double gamma);

void sync_target(QModel& q);

// HRLD envelope, model kind 2: online then target weights as raw doubles.
std::vector<std::uint8_t> serialize(const QModel& q);
QModel deserialize_qmodel(const std::vector<std::uint8_t>& bytes);

}  // namespace herald::policy
