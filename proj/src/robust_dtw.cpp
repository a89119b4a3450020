#include "robustdtw/robust_dtw.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

namespace robustdtw {

namespace {

void validate_config(const RobustDtwConfig& config) {
  if (config.radius < 1) throw std::invalid_argument("radius must be at least 1");
  if (config.min_level_size < 4) {
    throw std::invalid_argument("min_level_size must be at least 4");
  }
  if (config.inner_iterations < 1) {
    throw std::invalid_argument("inner_iterations must be at least 1");
  }
  if (config.early_exit_rel_change < 0.0) {
    throw std::invalid_argument("early_exit_rel_change must be non-negative");
  }
}

WarpPath diagonal_path(int len) {
  WarpPath path;
  path.reserve(len);
  for (int i = 0; i < len; ++i) path.emplace_back(i, i);
  return path;
}

bool relative_change_small(double current, double previous, double tol) {
  if (previous == std::numeric_limits<double>::infinity()) return false;
  const double scale = std::max({std::fabs(previous), std::fabs(current), 1e-12});
  return std::fabs(current - previous) <= tol * scale;
}

}  // namespace

TimeSeries upsample_trend(const TimeSeries& series, std::size_t target_len) {
  const std::size_t len = series.size();
  if (len == 0) throw std::invalid_argument("cannot upsample an empty series");
  if (target_len + 1 < 2 * len || target_len > 2 * len + 1) {
    throw std::invalid_argument("upsample target must be within one of twice the length");
  }
  TimeSeries out;
  out.name = series.name;
  out.values.resize(target_len);
  if (target_len == 1 || len == 1) {
    std::fill(out.values.begin(), out.values.end(), series.values.front());
    return out;
  }
  const double step = static_cast<double>(len - 1) / static_cast<double>(target_len - 1);
  for (std::size_t i = 0; i < target_len; ++i) {
    const double pos = static_cast<double>(i) * step;
    std::size_t base = static_cast<std::size_t>(pos);
    if (base >= len - 1) base = len - 2;
    const double frac = pos - static_cast<double>(base);
    out.values[i] =
        series.values[base] + frac * (series.values[base + 1] - series.values[base]);
  }
  out.values.back() = series.values.back();
  return out;
}

RobustDtwResult robust_dtw(const TimeSeries& x, const TimeSeries& y,
                           const RobustDtwConfig& config) {
  validate_config(config);
  if (x.size() < 3 || y.size() < 3) {
    throw std::invalid_argument("robust_dtw needs at least three samples per series");
  }

  RobustDtwResult result;

  // Identical inputs align on the diagonal with zero cost; run only the
  // shared per-series stage so the returned trends stay meaningful.
  if (x.values == y.values) {
    const TrendDecomposition self = robust_trend(robust_normalize(x), config.self_detrend);
    result.distance = 0.0;
    result.cumulative_cost = 0.0;
    result.path = diagonal_path(static_cast<int>(x.size()));
    result.x_trend = self.trend;
    result.x_trend.name = x.name;
    result.y_trend = self.trend;
    result.y_trend.name = y.name;
    result.converged = self.converged;
    result.levels.push_back(
        LevelTrace{1, x.size(), y.size(), 0.0, 0});
    return result;
  }

  const TrendDecomposition fx = robust_trend(robust_normalize(x), config.self_detrend);
  const TrendDecomposition fy = robust_trend(robust_normalize(y), config.self_detrend);
  result.converged = fx.converged && fy.converged;

  // Pyramid of filtered trends; level 1 (index 0) is full resolution.
  std::vector<TimeSeries> px{fx.trend};
  std::vector<TimeSeries> py{fy.trend};
  const std::size_t min_size = static_cast<std::size_t>(config.min_level_size);
  result.single_level = x.size() < min_size || y.size() < min_size;
  if (!result.single_level) {
    while (std::max(px.back().size(), py.back().size()) > min_size &&
           std::min(px.back().size(), py.back().size()) >= 2) {
      px.push_back(downsample(px.back()));
      py.push_back(downsample(py.back()));
    }
  }
  const int levels = static_cast<int>(px.size());

  TimeSeries u = px.back();
  TimeSeries v = py.back();
  WarpPath path;
  double cost = 0.0;

  for (int idx = levels - 1; idx >= 0; --idx) {
    const TimeSeries& target_u = px[idx];
    const TimeSeries& target_v = py[idx];
    const int rows = static_cast<int>(target_u.size());
    const int cols = static_cast<int>(target_v.size());
    const bool entering_finer = idx < levels - 1;
    if (entering_finer) {
      u = upsample_trend(u, target_u.size());
      v = upsample_trend(v, target_v.size());
    }

    double prev_cost = std::numeric_limits<double>::infinity();
    int iterations = 0;
    for (int k = 0; k < config.inner_iterations; ++k) {
      DtwResult aligned;
      if (path.empty()) {
        // Below the pyramid cutoff there is no coarse path to refine, so the
        // first alignment is exact instead of multi-level.
        aligned = result.single_level ? dtw_exact(u, v) : fast_dtw(u, v, config.radius);
      } else {
        const SearchWindow window = (k == 0 && entering_finer)
                                        ? project_path(path, config.radius, rows, cols)
                                        : path_window(path, config.radius, rows, cols);
        aligned = dtw_windowed(u, v, window);
      }
      path = aligned.path;
      cost = aligned.cumulative_cost;

      const GraphDetrendResult refreshed =
          graph_detrend(target_u, target_v, path, config.graph_detrend);
      u = refreshed.x_trend;
      v = refreshed.y_trend;
      result.converged = result.converged && refreshed.converged;

      ++iterations;
      if (relative_change_small(cost, prev_cost, config.early_exit_rel_change)) break;
      prev_cost = cost;
    }
    result.levels.push_back(
        LevelTrace{idx + 1, target_u.size(), target_v.size(), cost, iterations});
  }

  result.cumulative_cost = path_cost(u, v, path);
  result.distance = std::sqrt(result.cumulative_cost) / static_cast<double>(path.size());
  result.path = std::move(path);
  result.x_trend = std::move(u);
  result.y_trend = std::move(v);
  return result;
}

std::vector<std::vector<double>> distance_matrix(const std::vector<TimeSeries>& series,
                                                 const RobustDtwConfig& config, int num_threads) {
  return measure_distance_matrix(series, DistanceMeasure::robust_dtw, config, num_threads);
}

DistanceMeasure parse_measure(const std::string& name) {
  if (name == "robustdtw") return DistanceMeasure::robust_dtw;
  if (name == "dtw") return DistanceMeasure::dtw;
  if (name == "fastdtw") return DistanceMeasure::fast_dtw;
  if (name == "euclidean") return DistanceMeasure::euclidean;
  throw std::invalid_argument("unknown measure '" + name +
                              "' (expected robustdtw, dtw, fastdtw, or euclidean)");
}

std::string measure_name(DistanceMeasure measure) {
  switch (measure) {
    case DistanceMeasure::robust_dtw: return "robustdtw";
    case DistanceMeasure::dtw: return "dtw";
    case DistanceMeasure::fast_dtw: return "fastdtw";
    case DistanceMeasure::euclidean: return "euclidean";
  }
  throw std::logic_error("unhandled measure");
}

double measure_distance(const TimeSeries& x, const TimeSeries& y, DistanceMeasure measure,
                        const RobustDtwConfig& config) {
  switch (measure) {
    case DistanceMeasure::robust_dtw:
      return robust_dtw(x, y, config).distance;
    case DistanceMeasure::dtw:
      return dtw_exact(robust_normalize(x), robust_normalize(y)).distance;
    case DistanceMeasure::fast_dtw:
      return fast_dtw(robust_normalize(x), robust_normalize(y), config.radius).distance;
    case DistanceMeasure::euclidean: {
      if (x.size() != y.size()) {
        throw std::invalid_argument("euclidean distance needs equal lengths (" +
                                    std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()) + ")");
      }
      const TimeSeries xn = robust_normalize(x);
      const TimeSeries yn = robust_normalize(y);
      double acc = 0.0;
      for (std::size_t i = 0; i < xn.size(); ++i) {
        const double d = xn.values[i] - yn.values[i];
        acc += d * d;
      }
      return std::sqrt(acc);
    }
  }
  throw std::logic_error("unhandled measure");
}

std::vector<std::vector<double>> measure_distance_matrix(const std::vector<TimeSeries>& series,
                                                         DistanceMeasure measure,
                                                         const RobustDtwConfig& config,
                                                         int num_threads) {
  const std::size_t n = series.size();
  if (n == 0) throw std::invalid_argument("distance matrix needs at least one series");
  std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }

  int threads = num_threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = std::min<int>(threads, static_cast<int>(std::max<std::size_t>(pairs.size(), 1)));

  auto run_slice = [&](std::size_t start, std::size_t stride) {
    for (std::size_t k = start; k < pairs.size(); k += stride) {
      const auto [i, j] = pairs[k];
      const double d = measure_distance(series[i], series[j], measure, config);
      matrix[i][j] = d;
      matrix[j][i] = d;
    }
  };

  if (threads <= 1) {
    run_slice(0, 1);
    return matrix;
  }

  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        run_slice(static_cast<std::size_t>(t), static_cast<std::size_t>(threads));
      } catch (...) {
        failures[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& worker : pool) worker.join();
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return matrix;
}

}  // namespace robustdtw
