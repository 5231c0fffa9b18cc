#include "herald/policy/qmodel.hpp"

#include "herald/common/envelope.hpp"

#include <algorithm>
#include <cmath>

namespace herald::policy {

std::string_view action_name(Action a) {
  switch (a) {
    case Action::Reason: return "reason";
    case Action::Compute: return "compute";
    case Action::Hybrid: return "hybrid";
  }
  return "unknown";
}

bool is_tool_call(Action a) { return a != Action::Reason; }

double LinearQ::value(const PolicyState& s, Action a) const {
  const auto row = static_cast<std::size_t>(a) * kStateDim;
  double v = b[static_cast<std::size_t>(a)];
  for (std::size_t j = 0; j < kStateDim; ++j) v += w[row + j] * s[j];
  return v;
}

std::array<double, kActionCount> LinearQ::values(const PolicyState& s) const {
  return {value(s, Action::Reason), value(s, Action::Compute), value(s, Action::Hybrid)};
}

std::array<double, kActionCount> action_probabilities(const QModel& q, const PolicyState& s) {
  auto z = q.online.values(s);
  const double top = *std::max_element(z.begin(), z.end());
  double sum = 0;
  for (double& v : z) {
    v = std::exp(v - top);
    sum += v;
  }
  for (double& v : z) v /= sum;
  return z;
}

Action greedy_action(const QModel& q, const PolicyState& s) {
  const auto z = q.online.values(s);
  return static_cast<Action>(std::max_element(z.begin(), z.end()) - z.begin());
}

double td_error(const QModel& q, const Transition& tr, double gamma) {
  double target = tr.r;
  if (!tr.terminal) {
    const auto next = q.target.values(tr.s_next);
    target += gamma * *std::max_element(next.begin(), next.end());
  }
  return target - q.online.value(tr.s, tr.a);
}

std::vector<double> train_step(QModel& q, std::span<const WeightedTransition> batch, double lr, double gamma) {
  if (!(lr > 0)) throw std::invalid_argument("learning rate must be > 0");
  std::vector<double> deltas;
  deltas.reserve(batch.size());
  if (batch.empty()) return deltas;
  LinearQ next = q.online;
  const double scale = lr / static_cast<double>(batch.size());
  for (const auto& item : batch) {
    const Transition& tr = *item.transition;
    const double delta = td_error(q, tr, gamma);
    deltas.push_back(delta);
    const double step = scale * item.importance * delta;
    const auto a = static_cast<std::size_t>(tr.a);
    for (std::size_t j = 0; j < kStateDim; ++j) next.w[a * kStateDim + j] += step * tr.s[j];
    next.b[a] += step;
  }
  for (double v : next.w) {
    if (!std::isfinite(v)) throw NonFiniteUpdate("Q update produced a non-finite weight");
  }
  for (double v : next.b) {
    if (!std::isfinite(v)) throw NonFiniteUpdate("Q update produced a non-finite bias");
  }
  q.online = next;
  return deltas;
}

void sync_target(QModel& q) { q.target = q.online; }

namespace {

void write_q(ByteWriter& w, const LinearQ& q) {
  for (double v : q.w) w.f64(v);
  for (double v : q.b) w.f64(v);
}

LinearQ read_q(ByteReader& r) {
  LinearQ q;
  for (double& v : q.w) v = r.f64();
  for (double& v : q.b) v = r.f64();
  return q;
}

}  // namespace

std::vector<std::uint8_t> serialize(const QModel& q) {
  ByteWriter w;
  w.header({ModelKind::QModel, PayloadKind::Raw, static_cast<std::uint32_t>(kStateDim)});
  write_q(w, q.online);
  write_q(w, q.target);
  return w.take();
}

QModel deserialize_qmodel(const std::vector<std::uint8_t>& bytes) {
  ByteReader r(bytes);
  const EnvelopeHeader h = r.header();
  if (h.model != ModelKind::QModel) throw FormatError("envelope does not hold a Q-model");
  if (h.payload != PayloadKind::Raw) throw FormatError("Q-models are stored unquantized");
  if (h.features != kStateDim) throw FormatError("Q-model state dimension must be 32");
  QModel q;
  q.online = read_q(r);
  q.target = read_q(r);
  r.expect_end();
  return q;
}

}  // namespace herald::policy
