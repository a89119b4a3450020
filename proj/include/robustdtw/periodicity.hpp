#pragma once

#include <cstddef>
#include <vector>

#include "robustdtw/robust_dtw.hpp"
#include "robustdtw/series.hpp"

namespace robustdtw {

// Default decision threshold, calibrated on the seeded synthetic corpus
// (periodic sines and squares with noise/trend/spikes vs. unstructured
// signals). See the README for the calibration procedure.
inline constexpr double kDefaultPeriodicityThreshold = 0.0012;

// Distance config for adjacent-segment comparison. Per-segment detrending is
// far lighter than the full-series default: segments must keep their local
// structure, because flattening them makes any unstructured series score as
// periodic. The first-difference weight still dominates so isolated spikes
// stay out of the segment trends.
RobustDtwConfig periodicity_slice_config();

struct PeriodicityConfig {
  int period = 0;  // T, in samples; must be >= 4
  double threshold = kDefaultPeriodicityThreshold;
  double iqr_factor = 1.5;
  RobustDtwConfig dtw_config = periodicity_slice_config();
};

struct PeriodicityResult {
  bool is_periodic = false;
  double score = 0.0;  // mean of the retained adjacent-segment distances
  std::vector<double> segment_distances;  // one per adjacent segment pair
  std::vector<bool> retained_mask;        // true where the fence kept the distance
};

// floor(length / period) consecutive non-overlapping segments of exactly
// `period` samples; the trailing remainder is discarded. Requires at least
// 3 full segments.
std::vector<TimeSeries> slice_segments(const TimeSeries& series, int period);

// Tukey fences: retain v in [Q1 - factor*IQR, Q3 + factor*IQR] with quartiles
// from linear interpolation of the order statistics. The median value always
// survives; if rounding ever empties the mask the element nearest the median
// is kept.
std::vector<bool> iqr_filter(const std::vector<double>& values, double factor);

// Detrend (the residual proceeds), robustly normalize, slice into length-T
// segments, measure adjacent segments, drop fence outliers, and compare the
// mean retained distance to the threshold.
PeriodicityResult detect_periodicity(const TimeSeries& series, const PeriodicityConfig& config,
                                     DistanceMeasure measure = DistanceMeasure::robust_dtw);

}  // namespace robustdtw
