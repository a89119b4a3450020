#include "robustdtw/periodicity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "robustdtw/trend_filter.hpp"

namespace robustdtw {

namespace {

// Quantile by linear interpolation of the order statistics at (n-1)*p.
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = static_cast<double>(sorted.size() - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

// Whole-series detrend ahead of slicing. Pure curvature penalty, weighted so
// that following an oscillation of period T costs more than leaving it in the
// residual: the trend absorbs ramps and slow drift while the repeating
// pattern itself survives to the segment comparison. Solver knobs come from
// the segment-distance config so one tuning surface controls both stages.
SolverConfig global_detrend_config(int period, const SolverConfig& base) {
  constexpr double kTau = 6.283185307179586;
  SolverConfig config = base;
  config.lambda1 = 0.0;
  const double scale = static_cast<double>(period) / kTau;
  config.lambda2 = 2.0 * scale * scale;
  return config;
}

}  // namespace

RobustDtwConfig periodicity_slice_config() {
  RobustDtwConfig config;
  config.self_detrend.lambda1 = 0.4;
  config.self_detrend.lambda2 = 0.1;
  return config;
}

std::vector<TimeSeries> slice_segments(const TimeSeries& series, int period) {
  if (period < 1) throw std::invalid_argument("slice_segments: period must be positive");
  const std::size_t t = static_cast<std::size_t>(period);
  const std::size_t count = series.size() / t;
  if (count < 3) {
    throw std::invalid_argument("slice_segments: need at least 3 full segments (length " +
                                std::to_string(series.size()) + ", period " +
                                std::to_string(period) + ")");
  }
  std::vector<TimeSeries> segments;
  segments.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<double> vals(series.values.begin() + static_cast<std::ptrdiff_t>(s * t),
                             series.values.begin() + static_cast<std::ptrdiff_t>((s + 1) * t));
    segments.emplace_back(std::move(vals), series.name + "[" + std::to_string(s) + "]");
  }
  return segments;
}

std::vector<bool> iqr_filter(const std::vector<double>& values, double factor) {
  if (values.size() < 3) throw std::invalid_argument("iqr_filter: need at least 3 values");
  if (!(factor > 0.0)) throw std::invalid_argument("iqr_filter: factor must be positive");

  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double q1 = quantile_sorted(sorted, 0.25);
  const double q3 = quantile_sorted(sorted, 0.75);
  const double iqr = q3 - q1;
  const double lo = q1 - factor * iqr;
  const double hi = q3 + factor * iqr;

  std::vector<bool> mask(values.size());
  bool any = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    mask[i] = values[i] >= lo && values[i] <= hi;
    any = any || mask[i];
  }
  if (!any) {
    // The fences always contain the median, so this is purely defensive.
    const double med = quantile_sorted(sorted, 0.5);
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (std::abs(values[i] - med) < std::abs(values[best] - med)) best = i;
    }
    mask[best] = true;
  }
  return mask;
}

PeriodicityResult detect_periodicity(const TimeSeries& series, const PeriodicityConfig& config,
                                     DistanceMeasure measure) {
  if (config.period < 4) {
    throw std::invalid_argument("detect_periodicity: period must be >= 4");
  }
  if (!(config.threshold > 0.0)) {
    throw std::invalid_argument("detect_periodicity: threshold must be positive");
  }
  if (!(config.iqr_factor > 0.0)) {
    throw std::invalid_argument("detect_periodicity: iqr_factor must be positive");
  }
  if (series.size() < static_cast<std::size_t>(config.period) * 3) {
    throw std::invalid_argument("detect_periodicity: need at least 3 full periods");
  }

  // Normalizing before detrending puts the Huber width and penalty weights on
  // a unit scale and makes the score invariant to affine input transforms.
  const TimeSeries canonical = robust_normalize(series);
  const TrendDecomposition decomp =
      robust_trend(canonical, global_detrend_config(config.period, config.dtw_config.self_detrend));
  const TimeSeries normalized = robust_normalize(decomp.residual);
  const std::vector<TimeSeries> segments = slice_segments(normalized, config.period);

  PeriodicityResult result;
  result.segment_distances.reserve(segments.size() - 1);
  for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
    result.segment_distances.push_back(
        measure_distance(segments[i], segments[i + 1], measure, config.dtw_config));
  }

  // Two distances (the 3-segment minimum) sit inside any interpolated fence,
  // so the filter only runs once it has the 3 values it requires.
  if (result.segment_distances.size() >= 3) {
    result.retained_mask = iqr_filter(result.segment_distances, config.iqr_factor);
  } else {
    result.retained_mask.assign(result.segment_distances.size(), true);
  }
  double sum = 0.0;
  std::size_t kept = 0;
  for (std::size_t i = 0; i < result.segment_distances.size(); ++i) {
    if (result.retained_mask[i]) {
      sum += result.segment_distances[i];
      ++kept;
    }
  }
  result.score = sum / static_cast<double>(kept);
  result.is_periodic = result.score < config.threshold;
  return result;
}

}  // namespace robustdtw
