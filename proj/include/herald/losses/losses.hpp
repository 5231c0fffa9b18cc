#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace herald::losses {

inline constexpr double kDefaultConsistencyEps = 1e-6;
inline constexpr double kDefaultBilingualAlpha = 0.7;
inline constexpr double kDefaultKdAlpha = 0.3;
inline constexpr double kDefaultKdTau = 4.0;

class LengthMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NegativeFisher : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// sum max(0, |pred - truth| - eps)
double consistency_loss(const std::vector<double>& preds, const std::vector<double>& truths,
                        double eps = kDefaultConsistencyEps);

// sum F_j / 2 * (theta_j - theta*_j)^2
double retention_loss(const std::vector<double>& theta, const std::vector<double>& theta_star,
                      const std::vector<double>& fisher);

double bilingual_loss(double loss_en, double loss_ru, double alpha = kDefaultBilingualAlpha);

// Piecewise-linear in t through (t, value) knots sorted by t; constant
// beyond the first and last knot. No knots means identically zero.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  explicit PiecewiseLinear(std::vector<std::pair<double, double>> knots);

  double operator()(double t) const;
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

 private:
  std::vector<std::pair<double, double>> knots_;
};

struct Schedule {
  PiecewiseLinear lambda1;
  PiecewiseLinear lambda2;
};

// task + lambda1(t) * consistency + lambda2(t) * retention
double total_loss(double task, double consistency, double retention, const Schedule& schedule, double t);

struct KdResult {
  double value = 0;
  std::vector<double> gradient;  // with respect to the student logits
};

std::vector<double> softmax(const std::vector<double>& logits);

// alpha * CE(softmax(z_s), label) + (1 - alpha) * tau^2 * KL(p_s || p_t)
// with p = softmax(z / tau). The KL arguments are student first, teacher
// second.
KdResult kd_loss(const std::vector<double>& student_logits, const std::vector<double>& teacher_logits,
                 std::size_t hard_label, double alpha = kDefaultKdAlpha, double tau = kDefaultKdTau);

}  // namespace herald::losses
