#include "herald/calibration/calibration.hpp"

#include <algorithm>
#include <cmath>

namespace herald::calibration {

double calibrate_confidence(double f, double temperature) {
  if (!(temperature > 0)) throw NonPositiveTemperature("temperature must be > 0");
  const double z = f / temperature;
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

int bin_index(double confidence, int bins) {
  const int m = static_cast<int>(std::floor(confidence * bins));
  return std::clamp(m, 0, bins - 1);
}

ReliabilityBins reliability(const std::vector<Sample>& samples, int bins) {
  if (bins < 1) throw std::invalid_argument("bin count must be >= 1");
  ReliabilityBins out;
  out.bins = bins;
  out.per_bin.assign(static_cast<std::size_t>(bins), Bin{});
  std::vector<double> conf_sum(static_cast<std::size_t>(bins), 0.0);
  std::vector<int> correct(static_cast<std::size_t>(bins), 0);
  for (const auto& s : samples) {
    if (!(s.confidence >= 0 && s.confidence <= 1)) throw std::invalid_argument("confidence outside [0, 1]");
    const auto m = static_cast<std::size_t>(bin_index(s.confidence, bins));
    ++out.per_bin[m].count;
    conf_sum[m] += s.confidence;
    correct[m] += s.correct ? 1 : 0;
  }
  for (std::size_t m = 0; m < out.per_bin.size(); ++m) {
    Bin& b = out.per_bin[m];
    if (b.count == 0) continue;
    b.mean_confidence = conf_sum[m] / b.count;
    b.accuracy = static_cast<double>(correct[m]) / b.count;
  }
  return out;
}

double ece(const std::vector<Sample>& samples, int bins) {
  if (samples.empty()) throw EmptySampleSet("ece needs at least one sample");
  const ReliabilityBins r = reliability(samples, bins);
  const double n = static_cast<double>(samples.size());
  double total = 0;
  for (const auto& b : r.per_bin) {
    if (b.count > 0) total += b.count / n * std::abs(b.accuracy - b.mean_confidence);
  }
  return std::clamp(total, 0.0, 1.0);
}

double ece_at(const std::vector<ScoredSample>& samples, double temperature, int bins) {
  std::vector<Sample> calibrated;
  calibrated.reserve(samples.size());
  for (const auto& s : samples) calibrated.push_back({calibrate_confidence(s.score, temperature), s.correct});
  return ece(calibrated, bins);
}

SolverCalibration fit_temperature(const std::vector<ScoredSample>& val, int bins, std::string solver_id) {
  if (bins < 1) throw std::invalid_argument("bin count must be >= 1");
  if (val.size() < static_cast<std::size_t>(bins)) {
    throw std::invalid_argument("fit_temperature needs at least as many samples as bins");
  }
  const auto positives = std::count_if(val.begin(), val.end(), [](const ScoredSample& s) { return s.correct; });
  if (positives == 0 || positives == static_cast<long>(val.size())) {
    throw DegenerateLabels("all validation samples share one outcome");
  }

  const auto loss = [&](double log_t) { return ece_at(val, std::exp(log_t), bins); };
  const double lo = kMinLogTemperatureBound;
  const double hi = kMaxLogTemperatureBound;

  constexpr int kGrid = 64;
  const double step = (hi - lo) / (kGrid - 1);
  int best_i = 0;
  double best = loss(lo);
  for (int i = 1; i < kGrid; ++i) {
    const double v = loss(lo + i * step);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }

  double a = lo + std::max(best_i - 1, 0) * step;
  double b = lo + std::min(best_i + 1, kGrid - 1) * step;
  double best_x = lo + best_i * step;
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = loss(c);
  double fd = loss(d);
  while (b - a > kSearchWidth) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = loss(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = loss(d);
    }
    if (fc < best) {
      best = fc;
      best_x = c;
    }
    if (fd < best) {
      best = fd;
      best_x = d;
    }
  }

  SolverCalibration out;
  out.solver_id = std::move(solver_id);
  out.fitted_on = static_cast<int>(val.size());
  out.temperature = loss(0.0) <= best ? 1.0 : std::exp(best_x);
  return out;
}

}  // namespace herald::calibration
