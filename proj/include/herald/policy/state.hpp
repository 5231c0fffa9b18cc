#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace herald::policy {

inline constexpr std::size_t kStateDim = 32;
inline constexpr std::size_t kTopicCount = 7;

using PolicyState = std::array<double, kStateDim>;

// Slot layout.
inline constexpr std::size_t kTokenLength = 0;
inline constexpr std::size_t kDensity = 1;
inline constexpr std::size_t kMagnitude = 2;
inline constexpr std::size_t kTopicBegin = 3;  // 7 slots
inline constexpr std::size_t kStepIndex = 10;
inline constexpr std::size_t kReasoningLength = 11;
inline constexpr std::size_t kLastConfidence = 12;
inline constexpr std::size_t kEnsembleEntropy = 13;
inline constexpr std::size_t kToolCalls = 20;
inline constexpr std::size_t kToolSuccess = 21;
inline constexpr std::size_t kToolTime = 22;

// Coarse topics: algebra, geometry, calculus, probability, number theory,
// arithmetic, word problems. Maps the 12 routing categories onto them.
std::optional<std::size_t> coarse_topic(std::string_view category);

struct StateInputs {
  int token_length = 0;
  double operator_density = 0;
  double max_magnitude = 0;
  std::optional<std::size_t> topic;
  int step_index = 0;
  double reasoning_length = 0;  // tokens produced so far
  double last_confidence = 0;
  double ensemble_entropy = 0;  // nats
  int tool_calls = 0;
  double mean_tool_success = 0;
  double tool_ms = 0;
};

// Every entry is scaled and clamped into [0, 1]; reserved slots are zero.
PolicyState make_state(const StateInputs& in);

}  // namespace herald::policy
