#include "robustdtw/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace robustdtw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint8_t kDiag = 0;
constexpr std::uint8_t kVert = 1;
constexpr std::uint8_t kHorz = 2;
constexpr std::uint8_t kNone = 3;

double local_cost(double a, double b) {
  const double d = a - b;
  return d * d;
}

WarpPath backtrack(const std::vector<std::uint8_t>& back, int n, int end_i, int end_j) {
  WarpPath path;
  int i = end_i, j = end_j;
  while (true) {
    path.emplace_back(i, j);
    const std::uint8_t move = back[static_cast<std::size_t>(i) * n + j];
    if (move == kNone) break;
    if (move == kDiag) {
      --i;
      --j;
    } else if (move == kVert) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

bool is_valid_path(const WarpPath& path, int m, int n) {
  if (path.empty()) return false;
  if (path.front() != std::make_pair(0, 0)) return false;
  if (path.back() != std::make_pair(m - 1, n - 1)) return false;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const int di = path[k].first - path[k - 1].first;
    const int dj = path[k].second - path[k - 1].second;
    if (di < 0 || di > 1 || dj < 0 || dj > 1 || (di == 0 && dj == 0)) return false;
  }
  return true;
}

bool SearchWindow::is_valid() const {
  const int m = static_cast<int>(row_ranges.size());
  const int n = columns;
  if (m == 0 || n <= 0) return false;
  for (int i = 0; i < m; ++i) {
    const auto [lo, hi] = row_ranges[i];
    if (lo < 0 || lo > hi || hi >= n) return false;
    if (i > 0 && (lo < row_ranges[i - 1].first || hi < row_ranges[i - 1].second)) return false;
    if (i > 0 && row_ranges[i - 1].second < lo - 1) return false;
  }
  if (row_ranges.front().first != 0) return false;
  if (row_ranges.back().second != n - 1) return false;
  return true;
}

std::size_t SearchWindow::cell_count() const {
  std::size_t total = 0;
  for (const auto& [lo, hi] : row_ranges) total += static_cast<std::size_t>(hi - lo + 1);
  return total;
}

SearchWindow full_window(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("window dimensions must be positive");
  SearchWindow w;
  w.columns = n;
  w.row_ranges.assign(m, {0, n - 1});
  return w;
}

DtwResult dtw_exact(const TimeSeries& x, const TimeSeries& y) {
  const int m = static_cast<int>(x.size());
  const int n = static_cast<int>(y.size());
  if (m == 0 || n == 0) throw std::invalid_argument("dtw inputs must be non-empty");

  std::vector<std::uint8_t> back(static_cast<std::size_t>(m) * n, kNone);
  std::vector<double> prev(n, kInf), cur(n, kInf);

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double best = kInf;
      std::uint8_t move = kNone;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else {
        if (i > 0 && j > 0 && prev[j - 1] < best) {
          best = prev[j - 1];
          move = kDiag;
        }
        if (i > 0 && prev[j] < best) {
          best = prev[j];
          move = kVert;
        }
        if (j > 0 && cur[j - 1] < best) {
          best = cur[j - 1];
          move = kHorz;
        }
      }
      cur[j] = best + local_cost(x.values[i], y.values[j]);
      back[static_cast<std::size_t>(i) * n + j] = move;
    }
    std::swap(prev, cur);
  }

  DtwResult result;
  result.cumulative_cost = prev[n - 1];
  result.distance = std::sqrt(result.cumulative_cost);
  result.path = backtrack(back, n, m - 1, n - 1);
  return result;
}

DtwResult dtw_windowed(const TimeSeries& x, const TimeSeries& y, const SearchWindow& window) {
  const int m = static_cast<int>(x.size());
  const int n = static_cast<int>(y.size());
  if (m == 0 || n == 0) throw std::invalid_argument("dtw inputs must be non-empty");
  if (static_cast<int>(window.row_ranges.size()) != m || window.columns != n) {
    throw std::invalid_argument("window shape does not match the series lengths");
  }
  if (!window.is_valid()) {
    throw std::invalid_argument("search window violates its invariants");
  }

  // Row-local storage: costs and backpointers only over [lo, hi] per row.
  std::vector<std::vector<double>> cost(m);
  std::vector<std::vector<std::uint8_t>> back(m);
  for (int i = 0; i < m; ++i) {
    const auto [lo, hi] = window.row_ranges[i];
    cost[i].assign(static_cast<std::size_t>(hi - lo + 1), kInf);
    back[i].assign(static_cast<std::size_t>(hi - lo + 1), kNone);
  }

  auto cell_cost = [&](int i, int j) -> double {
    const auto [lo, hi] = window.row_ranges[i];
    if (j < lo || j > hi) return kInf;
    return cost[i][j - lo];
  };

  for (int i = 0; i < m; ++i) {
    const auto [lo, hi] = window.row_ranges[i];
    for (int j = lo; j <= hi; ++j) {
      double best = kInf;
      std::uint8_t move = kNone;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else {
        if (i > 0 && j > 0) {
          const double c = cell_cost(i - 1, j - 1);
          if (c < best) {
            best = c;
            move = kDiag;
          }
        }
        if (i > 0) {
          const double c = cell_cost(i - 1, j);
          if (c < best) {
            best = c;
            move = kVert;
          }
        }
        if (j > lo) {
          const double c = cost[i][j - 1 - lo];
          if (c < best) {
            best = c;
            move = kHorz;
          }
        }
      }
      cost[i][j - lo] = best + local_cost(x.values[i], y.values[j]);
      back[i][j - lo] = move;
    }
  }

  DtwResult result;
  result.cumulative_cost = cost[m - 1].back();
  result.distance = std::sqrt(result.cumulative_cost);
  int i = m - 1, j = n - 1;
  while (true) {
    result.path.emplace_back(i, j);
    const std::uint8_t move = back[i][j - window.row_ranges[i].first];
    if (move == kNone) break;
    if (move == kDiag) {
      --i;
      --j;
    } else if (move == kVert) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

TimeSeries downsample(const TimeSeries& series) {
  const std::size_t n = series.size();
  if (n < 2) throw std::invalid_argument("downsample needs at least two samples");
  std::vector<double> out;
  out.reserve((n + 1) / 2);
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    out.push_back((series.values[i] + series.values[i + 1]) / 2.0);
  }
  if (n % 2 == 1) out.push_back(series.values[n - 1]);
  TimeSeries result;
  result.name = series.name;
  result.values = std::move(out);
  return result;
}

namespace {

// Clip, force the corners, restore monotonicity and step-connectivity by
// widening only.
SearchWindow normalize_window(std::vector<std::pair<int, int>> ranges, int rows, int cols) {
  for (auto& [lo, hi] : ranges) {
    lo = std::clamp(lo, 0, cols - 1);
    hi = std::clamp(hi, 0, cols - 1);
    if (hi < lo) hi = lo;
  }
  ranges.front().first = 0;
  ranges.back().second = cols - 1;
  for (int i = rows - 2; i >= 0; --i) {
    ranges[i].first = std::min(ranges[i].first, ranges[i + 1].first);
  }
  for (int i = 0; i < rows; ++i) {
    ranges[i].second = std::max(ranges[i].second, ranges[i].first);
    if (i > 0) ranges[i].second = std::max(ranges[i].second, ranges[i - 1].second);
  }
  for (int i = rows - 1; i >= 1; --i) {
    ranges[i - 1].second = std::max(ranges[i - 1].second, ranges[i].first - 1);
  }
  SearchWindow out;
  out.columns = cols;
  out.row_ranges = std::move(ranges);
  return out;
}

SearchWindow window_from_base(const std::vector<std::pair<int, int>>& base, int radius, int rows,
                              int cols) {
  std::vector<std::pair<int, int>> ranges(rows);
  for (int i = 0; i < rows; ++i) {
    int lo = cols;
    int hi = -1;
    for (int k = std::max(0, i - radius); k <= std::min(rows - 1, i + radius); ++k) {
      lo = std::min(lo, base[k].first);
      hi = std::max(hi, base[k].second);
    }
    ranges[i] = {lo - radius, hi + radius};
  }
  return normalize_window(std::move(ranges), rows, cols);
}

}  // namespace

SearchWindow project_path(const WarpPath& path, int radius, int target_rows, int target_cols) {
  if (radius < 0) throw std::invalid_argument("projection radius must be non-negative");
  if (path.empty()) throw std::invalid_argument("cannot project an empty path");
  const int coarse_rows = path.back().first + 1;
  const int coarse_cols = path.back().second + 1;
  if (!is_valid_path(path, coarse_rows, coarse_cols)) {
    throw std::invalid_argument("cannot project an invalid path");
  }
  if (target_rows != 2 * coarse_rows && target_rows != 2 * coarse_rows - 1) {
    throw std::invalid_argument("projection target rows must follow the doubling rule");
  }
  if (target_cols != 2 * coarse_cols && target_cols != 2 * coarse_cols - 1) {
    throw std::invalid_argument("projection target cols must follow the doubling rule");
  }

  std::vector<std::pair<int, int>> base(target_rows, {target_cols, -1});
  for (const auto& [ci, cj] : path) {
    const int j_lo = 2 * cj;
    const int j_hi = std::min(2 * cj + 1, target_cols - 1);
    for (int fi = 2 * ci; fi <= std::min(2 * ci + 1, target_rows - 1); ++fi) {
      base[fi].first = std::min(base[fi].first, j_lo);
      base[fi].second = std::max(base[fi].second, j_hi);
    }
  }
  return window_from_base(base, radius, target_rows, target_cols);
}

SearchWindow path_window(const WarpPath& path, int radius, int rows, int cols) {
  if (radius < 0) throw std::invalid_argument("window radius must be non-negative");
  if (!is_valid_path(path, rows, cols)) {
    throw std::invalid_argument("cannot build a window around an invalid path");
  }
  std::vector<std::pair<int, int>> base(rows, {cols, -1});
  for (const auto& [i, j] : path) {
    base[i].first = std::min(base[i].first, j);
    base[i].second = std::max(base[i].second, j);
  }
  return window_from_base(base, radius, rows, cols);
}

DtwResult fast_dtw(const TimeSeries& x, const TimeSeries& y, int radius) {
  if (radius < 0) throw std::invalid_argument("fast_dtw radius must be non-negative");
  const int m = static_cast<int>(x.size());
  const int n = static_cast<int>(y.size());
  if (m == 0 || n == 0) throw std::invalid_argument("dtw inputs must be non-empty");
  const int base_size = std::max(radius + 2, 4);
  if (m <= base_size || n <= base_size) return dtw_exact(x, y);
  const TimeSeries xs = downsample(x);
  const TimeSeries ys = downsample(y);
  const DtwResult coarse = fast_dtw(xs, ys, radius);
  const SearchWindow window = project_path(coarse.path, radius, m, n);
  return dtw_windowed(x, y, window);
}

double path_cost(const TimeSeries& x, const TimeSeries& y, const WarpPath& path) {
  if (!is_valid_path(path, static_cast<int>(x.size()), static_cast<int>(y.size()))) {
    throw std::invalid_argument("path does not fit the series");
  }
  double total = 0.0;
  for (const auto& [i, j] : path) total += local_cost(x.values[i], y.values[j]);
  return total;
}

}  // namespace robustdtw
