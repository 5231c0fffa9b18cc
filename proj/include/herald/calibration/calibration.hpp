#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace herald::calibration {

inline constexpr int kDefaultBins = 15;
inline constexpr double kMinLogTemperatureBound = -2.995732273553991;  // ln 0.05
inline constexpr double kMaxLogTemperatureBound = 2.995732273553991;   // ln 20
inline constexpr double kSearchWidth = 1e-3;

class NonPositiveTemperature : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptySampleSet : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateLabels : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Sample {
  double confidence;
  bool correct;
};

struct ScoredSample {
  double score;  // raw score f before temperature scaling
  bool correct;
};

struct SolverCalibration {
  std::string solver_id;
  double temperature = 1.0;
  int fitted_on = 0;
};

struct Bin {
  int count = 0;
  double mean_confidence = 0;
  double accuracy = 0;
};

struct ReliabilityBins {
  int bins = kDefaultBins;
  std::vector<Bin> per_bin;
};

// sigmoid(f / T).
double calibrate_confidence(double f, double temperature);

// Bins are [m/M, (m+1)/M) except the last, which also holds 1.0.
int bin_index(double confidence, int bins);

ReliabilityBins reliability(const std::vector<Sample>& samples, int bins = kDefaultBins);

// Bin-weighted mean |accuracy - confidence|; empty bins contribute nothing.
double ece(const std::vector<Sample>& samples, int bins = kDefaultBins);

// ECE of sigmoid(f / T) over raw scores.
double ece_at(const std::vector<ScoredSample>& samples, double temperature, int bins = kDefaultBins);

// Minimizes ECE over ln T in [ln 0.05, ln 20]: a 64-point grid locates the
// basin, golden-section search narrows it to width 1e-3. T = 1 is kept
// when no candidate beats it. Throws DegenerateLabels when every sample
// has the same outcome and std::invalid_argument with fewer than `bins`
// samples.
SolverCalibration fit_temperature(const std::vector<ScoredSample>& val, int bins = kDefaultBins,
                                  std::string solver_id = {});

}  // namespace herald::calibration
