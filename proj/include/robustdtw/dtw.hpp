#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "robustdtw/series.hpp"

namespace robustdtw {

// Alignment as index pairs (i, j): starts at (0,0), ends at (m-1, n-1),
// each step advances by (1,0), (0,1), or (1,1).
using WarpPath = std::vector<std::pair<int, int>>;

bool is_valid_path(const WarpPath& path, int m, int n);

// Per-row inclusive column ranges [lo, hi] constraining the DP. A valid window
// is monotone (lo and hi non-decreasing), contains (0,0) and (m-1,n-1), and is
// step-connected: every cell except (0,0) has an in-window DP predecessor.
struct SearchWindow {
  std::vector<std::pair<int, int>> row_ranges;
  int columns = 0;

  bool is_valid() const;
  std::size_t cell_count() const;
};

SearchWindow full_window(int m, int n);

struct DtwResult {
  double distance = 0.0;         // sqrt(cumulative_cost)
  double cumulative_cost = 0.0;  // sum of squared differences over path cells
  WarpPath path;
};

// Full-grid DP with squared local cost; ties in backtracking prefer the
// diagonal, then the vertical, then the horizontal predecessor.
DtwResult dtw_exact(const TimeSeries& x, const TimeSeries& y);

// Same recurrence restricted to a valid window.
DtwResult dtw_windowed(const TimeSeries& x, const TimeSeries& y, const SearchWindow& window);

// Halve by pair means; an odd tail sample passes through unchanged.
TimeSeries downsample(const TimeSeries& series);

// Expand a coarse path onto the doubled grid (each cell maps to its 2x2
// block) and widen by `radius` in Chebyshev distance, then repair the window
// invariants by minimal widening. target dims must match the doubling rule.
SearchWindow project_path(const WarpPath& path, int radius, int target_rows, int target_cols);

// Window around a path at its own resolution, widened by `radius`.
SearchWindow path_window(const WarpPath& path, int radius, int rows, int cols);

// Coarse-to-fine approximate DTW: recurse on halved series, project the
// coarse path with the given radius, refine with the windowed DP.
DtwResult fast_dtw(const TimeSeries& x, const TimeSeries& y, int radius);

// Sum of squared differences of x[i], y[j] over the path cells.
double path_cost(const TimeSeries& x, const TimeSeries& y, const WarpPath& path);

}  // namespace robustdtw
