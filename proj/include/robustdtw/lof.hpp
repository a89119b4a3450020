#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "robustdtw/robust_dtw.hpp"
#include "robustdtw/series.hpp"

namespace robustdtw {

struct LofConfig {
  int k_neighbors = 30;
  double contamination = 0.02;  // fraction of series labeled as outliers
};

struct LofResult {
  std::vector<double> scores;  // one score per series, order preserved
  std::vector<bool> labels;    // exactly ceil(contamination * N) true entries
  double threshold = 0.0;      // smallest labeled score
};

// Classical LOF over a precomputed distance matrix: k-distance, tie-inclusive
// k-neighborhood, reachability distance, local reachability density, and the
// mean density ratio. A duplicate cluster has infinite density; the ratio of
// two infinite densities counts as 1. Requires a symmetric matrix with a zero
// diagonal, non-negative entries, and at least k + 1 points.
std::vector<double> lof_scores(const std::vector<std::vector<double>>& dist, int k);

// Pairwise distances under `measure`, LOF scores, then top-contamination
// labeling with ties broken toward the lower index.
LofResult detect_outliers(const std::vector<TimeSeries>& series,
                          const RobustDtwConfig& dtw_config = {},
                          const LofConfig& lof_config = {},
                          DistanceMeasure measure = DistanceMeasure::robust_dtw,
                          int num_threads = 0);

// Labeling stage alone, exposed so scores from any source can be thresholded.
LofResult label_scores(const std::vector<double>& scores, double contamination);

enum class NoiseKind { spikes, dips, both };

NoiseKind parse_noise_kind(const std::string& name);
std::string noise_kind_name(NoiseKind kind);

// Perturbs `count` distinct positions chosen by the seeded generator. A spike
// adds magnitude times the biweight scale of the input, a dip subtracts it,
// and `both` alternates starting with a spike. Requires count * 4 < length.
TimeSeries inject_noise(const TimeSeries& series, NoiseKind kind, int count,
                        double magnitude, std::uint64_t seed);

// Probability that a uniformly random positive outranks a uniformly random
// negative, counting ties as one half (rank-sum form). Needs at least one
// positive and one negative label.
double auc_score(const std::vector<double>& scores, const std::vector<bool>& truth);

}  // namespace robustdtw
