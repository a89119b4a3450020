#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace robustdtw {

// Ordered real-valued samples. Values must be finite; length must be >= 1.
struct TimeSeries {
  std::string name;
  std::vector<double> values;

  TimeSeries() = default;
  explicit TimeSeries(std::vector<double> vals, std::string label = "");

  std::size_t size() const { return values.size(); }
};

// Location/scale summary used by robust normalization. mad and biweight_scale
// are zero only for constant input.
struct RobustStats {
  double median = 0.0;
  double mad = 0.0;
  double biweight_scale = 0.0;
  double tuning_constant = 9.0;
};

inline constexpr double kDefaultTuningConstant = 9.0;

double median(const std::vector<double>& values);
double median(const TimeSeries& series);

// Median absolute deviation, unscaled: median(|x_i - median(x)|).
double mad(const std::vector<double>& values);

// Biweight scale estimate with tuning constant c. Samples with
// |x_i - M| >= c * MAD are excluded from both sums. Falls back to
// 1.4826 * MAD when MAD is zero or the denominator sum is not positive.
double biweight_scale(const std::vector<double>& values,
                      double tuning_constant = kDefaultTuningConstant);
double biweight_scale(const TimeSeries& series,
                      double tuning_constant = kDefaultTuningConstant);

RobustStats robust_stats(const TimeSeries& series,
                         double tuning_constant = kDefaultTuningConstant);

// (x_i - median) / biweight_scale; the zero series when the scale is zero.
TimeSeries robust_normalize(const TimeSeries& series);

enum class SeriesFormat { csv, json };

// CSV: header row of names, one column per series, strictly rectangular.
// JSON: top-level object mapping name -> array of finite numbers.
std::vector<TimeSeries> load_series(const std::string& path, SeriesFormat format);
void write_series(const std::string& path, const std::vector<TimeSeries>& series,
                  SeriesFormat format);

}  // namespace robustdtw
