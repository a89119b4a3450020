#include "robustdtw/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace robustdtw {

namespace {

constexpr double kMadConsistencyConstant = 1.4826;

void require_finite(const std::vector<double>& vals, const std::string& label) {
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!std::isfinite(vals[i])) {
      throw std::invalid_argument("series '" + label + "' has a non-finite value at index " +
                                  std::to_string(i));
    }
  }
}

double sorted_middle(std::vector<double> v) {
  const std::size_t n = v.size();
  const std::size_t mid = n / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double upper = v[mid];
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return (lower + upper) / 2.0;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> vals, std::string label)
    : name(std::move(label)), values(std::move(vals)) {
  if (values.empty()) {
    throw std::invalid_argument("series '" + name + "' must hold at least one sample");
  }
  require_finite(values, name);
}

double median(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("median of an empty series");
  return sorted_middle(values);
}

double median(const TimeSeries& series) { return median(series.values); }

double mad(const std::vector<double>& values) {
  const double m = median(values);
  std::vector<double> dev(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) dev[i] = std::fabs(values[i] - m);
  return sorted_middle(std::move(dev));
}

double biweight_scale(const std::vector<double>& values, double tuning_constant) {
  if (values.size() < 2) {
    throw std::invalid_argument("biweight scale needs at least two samples");
  }
  if (tuning_constant <= 0.0) {
    throw std::invalid_argument("biweight tuning constant must be positive");
  }
  const double m = median(values);
  const double dispersion = mad(values);
  if (dispersion == 0.0) return 0.0;
  double num = 0.0;
  double den = 0.0;
  for (const double x : values) {
    const double d = x - m;
    const double u = d / (tuning_constant * dispersion);
    const double u2 = u * u;
    if (u2 >= 1.0) continue;
    const double w = 1.0 - u2;
    num += d * d * w * w * w * w;
    den += w * (1.0 - 5.0 * u2);
  }
  if (den <= 0.0) return kMadConsistencyConstant * dispersion;
  return std::sqrt(static_cast<double>(values.size()) * num) / den;
}

double biweight_scale(const TimeSeries& series, double tuning_constant) {
  return biweight_scale(series.values, tuning_constant);
}

RobustStats robust_stats(const TimeSeries& series, double tuning_constant) {
  RobustStats stats;
  stats.median = median(series.values);
  stats.mad = mad(series.values);
  stats.biweight_scale = biweight_scale(series.values, tuning_constant);
  stats.tuning_constant = tuning_constant;
  return stats;
}

TimeSeries robust_normalize(const TimeSeries& series) {
  if (series.size() < 2) {
    throw std::invalid_argument("robust_normalize needs at least two samples");
  }
  const double m = median(series.values);
  const double scale = biweight_scale(series.values);
  std::vector<double> out(series.size(), 0.0);
  if (scale > 0.0) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (series.values[i] - m) / scale;
  }
  TimeSeries result;
  result.name = series.name;
  result.values = std::move(out);
  return result;
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (const char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  return cells;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t column) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw std::invalid_argument("CSV row " + std::to_string(row) + ", column " +
                                std::to_string(column) + ": cannot parse '" + cell +
                                "' as a number");
  }
  if (!std::isfinite(value)) {
    throw std::invalid_argument("CSV row " + std::to_string(row) + ", column " +
                                std::to_string(column) + ": non-finite value '" + cell + "'");
  }
  return value;
}

std::vector<TimeSeries> load_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("CSV input is empty");
  const std::vector<std::string> header = split_csv_row(line);
  if (header.size() == 1 && header[0].empty()) {
    throw std::invalid_argument("CSV header row is empty");
  }
  std::vector<std::vector<double>> columns(header.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    if (line.empty()) break;
    ++row;
    const std::vector<std::string> cells = split_csv_row(line);
    if (cells.size() != header.size()) {
      throw std::invalid_argument("CSV row " + std::to_string(row) + " has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      columns[c].push_back(parse_cell(cells[c], row, c + 1));
    }
  }
  std::vector<TimeSeries> out;
  out.reserve(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (columns[c].empty()) {
      throw std::invalid_argument("CSV column '" + header[c] + "' has no samples");
    }
    out.emplace_back(std::move(columns[c]), header[c]);
  }
  return out;
}

std::vector<TimeSeries> load_json(std::istream& in, const std::string& path) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("cannot parse JSON file '" + path + "': " + e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("JSON file '" + path + "' must hold an object of arrays");
  }
  std::vector<TimeSeries> out;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_array()) {
      throw std::invalid_argument("JSON entry '" + key + "' is not an array");
    }
    std::vector<double> samples;
    samples.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (!value[i].is_number()) {
        throw std::invalid_argument("JSON entry '" + key + "', index " + std::to_string(i) +
                                    ": not a number");
      }
      samples.push_back(value[i].get<double>());
    }
    if (samples.empty()) {
      throw std::invalid_argument("JSON entry '" + key + "' has no samples");
    }
    out.emplace_back(std::move(samples), key);
  }
  if (out.empty()) throw std::invalid_argument("JSON file '" + path + "' holds no series");
  return out;
}

}  // namespace

std::vector<TimeSeries> load_series(const std::string& path, SeriesFormat format) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "' for reading");
  return format == SeriesFormat::csv ? load_csv(in) : load_json(in, path);
}

void write_series(const std::string& path, const std::vector<TimeSeries>& series,
                  SeriesFormat format) {
  if (series.empty()) throw std::invalid_argument("nothing to write: no series given");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  if (format == SeriesFormat::json) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const auto& s : series) doc[s.name] = s.values;
    out << doc.dump(2) << '\n';
  } else {
    const std::size_t rows = series.front().size();
    for (const auto& s : series) {
      if (s.size() != rows) {
        throw std::invalid_argument("CSV output needs equal lengths; series '" + s.name +
                                    "' differs from '" + series.front().name + "'");
      }
    }
    for (std::size_t c = 0; c < series.size(); ++c) {
      if (c) out << ',';
      out << series[c].name;
    }
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < series.size(); ++c) {
        if (c) out << ',';
        out << format_double(series[c].values[r]);
      }
      out << '\n';
    }
  }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace robustdtw
