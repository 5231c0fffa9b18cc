#include "herald/losses/losses.hpp"

#include <algorithm>
#include <cmath>

namespace herald::losses {

namespace {

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) throw LengthMismatch("sequences differ in length");
}

std::vector<double> log_softmax(const std::vector<double>& z) {
  const double m = *std::max_element(z.begin(), z.end());
  double sum = 0;
  for (double v : z) sum += std::exp(v - m);
  const double log_norm = m + std::log(sum);
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i] - log_norm;
  return out;
}

}  // namespace

double consistency_loss(const std::vector<double>& preds, const std::vector<double>& truths, double eps) {
  require_same_length(preds.size(), truths.size());
  if (!(eps >= 0)) throw std::invalid_argument("eps must be >= 0");
  double total = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) total += std::max(0.0, std::abs(preds[i] - truths[i]) - eps);
  return total;
}

double retention_loss(const std::vector<double>& theta, const std::vector<double>& theta_star,
                      const std::vector<double>& fisher) {
  require_same_length(theta.size(), theta_star.size());
  require_same_length(theta.size(), fisher.size());
  double total = 0;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    if (fisher[j] < 0) throw NegativeFisher("Fisher diagonal entry is negative");
    const double d = theta[j] - theta_star[j];
    total += fisher[j] / 2 * d * d;
  }
  return total;
}

double bilingual_loss(double loss_en, double loss_ru, double alpha) {
  if (!(alpha >= 0 && alpha <= 1)) throw std::invalid_argument("alpha must be in [0, 1]");
  return alpha * loss_en + (1 - alpha) * loss_ru;
}

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!(knots_[i].second >= 0)) throw std::invalid_argument("schedule values must be non-negative");
    if (i > 0 && !(knots_[i].first > knots_[i - 1].first)) {
      throw std::invalid_argument("schedule knots must be strictly increasing in t");
    }
  }
}

double PiecewiseLinear::operator()(double t) const {
  if (knots_.empty()) return 0;
  if (t <= knots_.front().first) return knots_.front().second;
  if (t >= knots_.back().first) return knots_.back().second;
  const auto hi = std::upper_bound(knots_.begin(), knots_.end(), t,
                                   [](double x, const auto& k) { return x < k.first; });
  const auto lo = hi - 1;
  const double u = (t - lo->first) / (hi->first - lo->first);
  return lo->second + u * (hi->second - lo->second);
}

double total_loss(double task, double consistency, double retention, const Schedule& schedule, double t) {
  if (!(t >= 0)) throw std::invalid_argument("training stage t must be >= 0");
  return task + schedule.lambda1(t) * consistency + schedule.lambda2(t) * retention;
}

std::vector<double> softmax(const std::vector<double>& logits) {
  auto out = log_softmax(logits);
  for (double& v : out) v = std::exp(v);
  return out;
}

KdResult kd_loss(const std::vector<double>& student_logits, const std::vector<double>& teacher_logits,
                 std::size_t hard_label, double alpha, double tau) {
  require_same_length(student_logits.size(), teacher_logits.size());
  if (student_logits.empty()) throw std::invalid_argument("logits must be non-empty");
  if (hard_label >= student_logits.size()) throw std::invalid_argument("hard label out of range");
  if (!(tau > 0)) throw std::invalid_argument("tau must be > 0");
  if (!(alpha >= 0 && alpha <= 1)) throw std::invalid_argument("alpha must be in [0, 1]");

  const std::size_t n = student_logits.size();
  const auto log_p = log_softmax(student_logits);

  std::vector<double> zs(n);
  std::vector<double> zt(n);
  for (std::size_t i = 0; i < n; ++i) {
    zs[i] = student_logits[i] / tau;
    zt[i] = teacher_logits[i] / tau;
  }
  const auto log_ps = log_softmax(zs);
  const auto log_pt = log_softmax(zt);

  double kl = 0;
  std::vector<double> ps(n);
  std::vector<double> ratio(n);
  for (std::size_t i = 0; i < n; ++i) {
    ps[i] = std::exp(log_ps[i]);
    ratio[i] = log_ps[i] - log_pt[i];
    kl += ps[i] * ratio[i];
  }

  KdResult out;
  out.value = alpha * -log_p[hard_label] + (1 - alpha) * tau * tau * kl;
  out.gradient.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ce = std::exp(log_p[i]) - (i == hard_label ? 1.0 : 0.0);
    out.gradient[i] = alpha * ce + (1 - alpha) * tau * ps[i] * (ratio[i] - kl);
  }
  return out;
}

}  // namespace herald::losses
