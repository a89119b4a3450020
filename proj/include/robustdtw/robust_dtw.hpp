#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "robustdtw/dtw.hpp"
#include "robustdtw/series.hpp"
#include "robustdtw/temporal_graph.hpp"
#include "robustdtw/trend_filter.hpp"

namespace robustdtw {

struct RobustDtwConfig {
  SolverConfig self_detrend;         // Huber-fidelity trend extraction per series
  GraphDetrendConfig graph_detrend;  // joint refinement along the alignment
  int radius = 2;                    // window half-width for projection
  int min_level_size = 16;           // pyramid stops once both series fit
  int inner_iterations = 3;          // alignment/detrend repeats per level
  double early_exit_rel_change = 1e-4;
};

struct LevelTrace {
  int level = 0;  // 1 is full resolution; higher is coarser
  std::size_t x_len = 0;
  std::size_t y_len = 0;
  double cost = 0.0;  // cumulative windowed-DTW cost at the last inner iteration
  int iterations = 0;
};

struct RobustDtwResult {
  double distance = 0.0;         // sqrt(cumulative_cost) / number of path cells
  double cumulative_cost = 0.0;  // squared differences of the final trends on the path
  WarpPath path;
  TimeSeries x_trend;  // final full-resolution trend estimates
  TimeSeries y_trend;
  bool converged = true;      // every solver call converged
  bool single_level = false;  // short-input fallback was taken
  std::vector<LevelTrace> levels;  // coarse first
};

// Noise/outlier-robust dissimilarity: robust normalization, per-series trend
// extraction, then coarse-to-fine alternation of windowed DTW and joint graph
// detrending over a downsampling pyramid.
RobustDtwResult robust_dtw(const TimeSeries& x, const TimeSeries& y,
                           const RobustDtwConfig& config = {});

// Linear interpolation onto target_len samples (endpoints map to endpoints);
// target_len must be within one of twice the input length.
TimeSeries upsample_trend(const TimeSeries& series, std::size_t target_len);

// Symmetric pairwise distances, zero diagonal. Unordered pairs may be
// evaluated in parallel; results do not depend on the schedule.
std::vector<std::vector<double>> distance_matrix(const std::vector<TimeSeries>& series,
                                                 const RobustDtwConfig& config = {},
                                                 int num_threads = 0);

enum class DistanceMeasure { robust_dtw, dtw, fast_dtw, euclidean };

DistanceMeasure parse_measure(const std::string& name);
std::string measure_name(DistanceMeasure measure);

// Baseline measures run on robust-normalized inputs so comparisons isolate
// the alignment behavior; euclidean requires equal lengths.
double measure_distance(const TimeSeries& x, const TimeSeries& y, DistanceMeasure measure,
                        const RobustDtwConfig& config = {});

std::vector<std::vector<double>> measure_distance_matrix(const std::vector<TimeSeries>& series,
                                                         DistanceMeasure measure,
                                                         const RobustDtwConfig& config = {},
                                                         int num_threads = 0);

}  // namespace robustdtw
