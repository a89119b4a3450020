#include "robustdtw/synth.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "robustdtw/rng.hpp"

namespace robustdtw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& field, const char* what) {
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw std::invalid_argument(std::string("bench CSV: cannot parse ") + what + " '" + field +
                                "'");
  }
  return value;
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  const std::size_t mid = n / 2;
  return n % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "sine") return GeneratorKind::sine;
  if (name == "square") return GeneratorKind::square;
  if (name == "noise") return GeneratorKind::noise;
  if (name == "trend+sine" || name == "trend_sine") return GeneratorKind::trend_sine;
  throw std::invalid_argument("unknown generator kind '" + name +
                              "' (expected sine, square, noise, or trend+sine)");
}

std::string generator_kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::sine: return "sine";
    case GeneratorKind::square: return "square";
    case GeneratorKind::noise: return "noise";
    case GeneratorKind::trend_sine: return "trend+sine";
  }
  throw std::invalid_argument("unknown generator kind");
}

TimeSeries generate(const GeneratorSpec& spec) {
  if (spec.length < 4) throw std::invalid_argument("generate: length must be >= 4");
  if (!(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma)) {
    throw std::invalid_argument("generate: noise_sigma must be finite and >= 0");
  }
  if (!std::isfinite(spec.trend_slope)) {
    throw std::invalid_argument("generate: trend_slope must be finite");
  }

  Rng rng(spec.seed);
  const std::size_t n = spec.length;
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) {
    double base = 0.0;
    switch (spec.kind) {
      case GeneratorKind::sine:
        base = std::sin(kTwoPi * static_cast<double>(k) / static_cast<double>(n));
        break;
      case GeneratorKind::square:
        base = 2 * k < n ? 1.0 : -1.0;
        break;
      case GeneratorKind::noise:
        base = 0.0;
        break;
      case GeneratorKind::trend_sine:
        base = spec.trend_slope * static_cast<double>(k) +
               std::sin(kTwoPi * static_cast<double>(k) / static_cast<double>(n));
        break;
    }
    values[k] = base + spec.noise_sigma * rng.gaussian();
  }
  return TimeSeries(std::move(values),
                    generator_kind_name(spec.kind) + "_" + std::to_string(spec.seed));
}

BenchReport run_scaling_bench(const std::vector<std::size_t>& lengths,
                              const std::vector<DistanceMeasure>& measures, int repeats,
                              const RobustDtwConfig& config) {
  if (lengths.empty()) throw std::invalid_argument("run_scaling_bench: no lengths");
  for (std::size_t i = 1; i < lengths.size(); ++i) {
    if (lengths[i] <= lengths[i - 1]) {
      throw std::invalid_argument("run_scaling_bench: lengths must be strictly ascending");
    }
  }
  if (lengths.front() < 4) {
    throw std::invalid_argument("run_scaling_bench: lengths must be >= 4");
  }
  if (measures.empty()) throw std::invalid_argument("run_scaling_bench: no measures");
  if (repeats < 5) throw std::invalid_argument("run_scaling_bench: repeats must be >= 5");

  BenchReport report;
  report.rows.reserve(lengths.size() * measures.size());
  for (DistanceMeasure measure : measures) {
    for (std::size_t length : lengths) {
      // The same seeded pair serves every measure at this length, so rows
      // compare alignment cost rather than input luck. Sigma 0.1 keeps the
      // sine shape dominant.
      GeneratorSpec spec;
      spec.kind = GeneratorKind::sine;
      spec.length = length;
      spec.noise_sigma = 0.1;
      spec.seed = 0x5EED0000ULL + 2 * static_cast<std::uint64_t>(length);
      const TimeSeries x = generate(spec);
      spec.seed += 1;
      const TimeSeries y = generate(spec);

      BenchRow row;
      row.measure = measure_name(measure);
      row.length = length;
      try {
        std::vector<double> times_ms;
        times_ms.reserve(static_cast<std::size_t>(repeats));
        double distance = 0.0;
        for (int r = 0; r < repeats; ++r) {
          const auto start = std::chrono::steady_clock::now();
          distance = measure_distance(x, y, measure, config);
          const auto stop = std::chrono::steady_clock::now();
          times_ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
        }
        row.median_ms = median_of(std::move(times_ms));
        row.distance = distance;
      } catch (const std::exception&) {
        row.failed = true;
        row.median_ms = kNaN;
        row.distance = kNaN;
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string bench_csv(const BenchReport& report) {
  std::string out = "measure,length,median_ms,distance\n";
  for (const BenchRow& row : report.rows) {
    out += row.measure;
    out += ',';
    out += std::to_string(row.length);
    out += ',';
    out += format_number(row.median_ms);
    out += ',';
    out += format_number(row.distance);
    out += '\n';
  }
  return out;
}

BenchReport parse_bench_csv(const std::string& text) {
  BenchReport report;
  std::size_t pos = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "measure,length,median_ms,distance") {
        throw std::invalid_argument("bench CSV: unexpected header '" + line + "'");
      }
      saw_header = true;
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (fields.size() != 4) {
      throw std::invalid_argument("bench CSV: expected 4 fields, got " +
                                  std::to_string(fields.size()));
    }
    BenchRow row;
    row.measure = fields[0];
    row.length = static_cast<std::size_t>(parse_number(fields[1], "length"));
    row.median_ms = parse_number(fields[2], "median_ms");
    row.distance = parse_number(fields[3], "distance");
    row.failed = std::isnan(row.median_ms) || std::isnan(row.distance);
    report.rows.push_back(std::move(row));
  }
  if (!saw_header) throw std::invalid_argument("bench CSV: missing header");
  return report;
}

OutlierCorpus make_outlier_corpus(int n_normal, int n_outlier, std::size_t length,
                                  std::uint64_t seed) {
  if (n_normal < 30) throw std::invalid_argument("make_outlier_corpus: n_normal must be >= 30");
  if (n_outlier < 0) throw std::invalid_argument("make_outlier_corpus: n_outlier must be >= 0");
  if (length < 8) throw std::invalid_argument("make_outlier_corpus: length must be >= 8");

  Rng rng(seed);
  OutlierCorpus corpus;
  corpus.series.reserve(static_cast<std::size_t>(n_normal + n_outlier));

  // Jitter stays within a tenth of a period and every series carries a small
  // noise floor: normals must form one tight cluster with finite local
  // densities, not a ring of arbitrary phases.
  const double n = static_cast<double>(length);
  const double kPhaseJitter = 0.2 * kTwoPi;
  const double kNoiseFloor = 0.05;
  for (int i = 0; i < n_normal; ++i) {
    const double phase = (rng.uniform() - 0.5) * kPhaseJitter;
    std::vector<double> values(length);
    for (std::size_t k = 0; k < length; ++k) {
      values[k] = std::sin(kTwoPi * static_cast<double>(k) / n + phase) +
                  kNoiseFloor * rng.gaussian();
    }
    corpus.series.emplace_back(std::move(values), "normal_" + std::to_string(i));
    corpus.truth.push_back(false);
  }

  for (int j = 0; j < n_outlier; ++j) {
    std::vector<double> values(length);
    if (j % 2 == 0) {
      // Square wave under a random circular shift.
      const std::size_t shift = static_cast<std::size_t>(rng.integer(length));
      for (std::size_t k = 0; k < length; ++k) {
        const std::size_t s = (k + shift) % length;
        values[k] = (2 * s < length ? 1.0 : -1.0) + kNoiseFloor * rng.gaussian();
      }
    } else {
      // Chirp sweeping from one to three cycles across the window.
      const double phase = (rng.uniform() - 0.5) * kPhaseJitter;
      for (std::size_t k = 0; k < length; ++k) {
        const double t = static_cast<double>(k) / n;
        values[k] = std::sin(kTwoPi * (t + t * t) + phase) + kNoiseFloor * rng.gaussian();
      }
    }
    corpus.series.emplace_back(std::move(values), "outlier_" + std::to_string(j));
    corpus.truth.push_back(true);
  }
  return corpus;
}

}  // namespace robustdtw
