#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "robustdtw/robust_dtw.hpp"
#include "robustdtw/series.hpp"

namespace robustdtw {

enum class GeneratorKind { sine, square, noise, trend_sine };

GeneratorKind parse_generator_kind(const std::string& name);
std::string generator_kind_name(GeneratorKind kind);

// Identical specs produce bit-identical series on every platform (seeded
// generator with fixed draw algorithms).
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::sine;
  std::size_t length = 0;  // must be >= 4
  double noise_sigma = 0.0;
  double trend_slope = 0.0;  // used by trend_sine only
  std::uint64_t seed = 0;
};

// sine: one full period sin(2*pi*k/length) plus Gaussian noise. square: +1 on
// the first half, -1 on the second, plus noise. noise: pure Gaussian samples
// scaled by noise_sigma. trend_sine: slope*k added to the sine form.
TimeSeries generate(const GeneratorSpec& spec);

struct BenchRow {
  std::string measure;
  std::size_t length = 0;
  double median_ms = 0.0;
  double distance = 0.0;
  bool failed = false;  // numeric fields are NaN when true
};

struct BenchReport {
  std::vector<BenchRow> rows;  // one per (measure, length), lengths grouped per measure
};

// Times each measure on a fresh seeded noisy-sine pair per length and keeps
// the median wall time over `repeats` runs. A failing cell is recorded and
// the run continues. Lengths must be strictly ascending; repeats >= 5.
BenchReport run_scaling_bench(const std::vector<std::size_t>& lengths,
                              const std::vector<DistanceMeasure>& measures, int repeats,
                              const RobustDtwConfig& config = {});

// CSV form with header measure,length,median_ms,distance; numbers are written
// in shortest round-trip form so parse_bench_csv(bench_csv(r)) == r.
std::string bench_csv(const BenchReport& report);
BenchReport parse_bench_csv(const std::string& text);

struct OutlierCorpus {
  std::vector<TimeSeries> series;  // normals first, then outliers
  std::vector<bool> truth;         // true marks an outlier
};

// Normals are phase-jittered sines; outliers alternate square and chirp
// shapes. Requires n_normal >= 30 and length >= 8.
OutlierCorpus make_outlier_corpus(int n_normal, int n_outlier, std::size_t length,
                                  std::uint64_t seed);

}  // namespace robustdtw
