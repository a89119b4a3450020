// Command-line front end: dist, outliers, period, and bench subcommands over
// the robustdtw library. Machine output goes to stdout or --emit files only;
// diagnostics go to stderr. Exit codes: 0 success, 1 validation error,
// 2 runtime error.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "robustdtw/app_config.hpp"
#include "robustdtw/lof.hpp"
#include "robustdtw/periodicity.hpp"
#include "robustdtw/robust_dtw.hpp"
#include "robustdtw/series.hpp"
#include "robustdtw/synth.hpp"

namespace {

using nlohmann::ordered_json;
using namespace robustdtw;

// Shortest round-trip decimal with a forced fraction marker so distances read
// as reals ("0" -> "0.0").
std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".einf") == std::string::npos) s += ".0";
  return s;
}

SeriesFormat format_for(const std::string& path) {
  const auto dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == "json" ? SeriesFormat::json : SeriesFormat::csv;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

// Scores may be infinite for degenerate duplicate clusters; JSON has no inf
// literal, so those serialize as strings.
ordered_json json_number(double value) {
  if (std::isfinite(value)) return value;
  return value > 0 ? "inf" : "-inf";
}

const TimeSeries& find_series(const std::vector<TimeSeries>& series, const std::string& name) {
  for (const TimeSeries& s : series) {
    if (s.name == name) return s;
  }
  throw std::invalid_argument("no series named '" + name + "' in the input");
}

struct DistArgs {
  std::string input;
  std::string pair;
  std::string config_path;
  std::string emit_path;
};

int run_dist(const DistArgs& args) {
  AppConfig config;
  if (!args.config_path.empty()) config = load_app_config(args.config_path);

  const auto series = load_series(args.input, format_for(args.input));
  const auto names = split_list(args.pair);
  if (names.size() != 2) {
    throw std::invalid_argument("--pair expects two comma-separated series names");
  }
  const TimeSeries& x = find_series(series, names[0]);
  const TimeSeries& y = find_series(series, names[1]);

  const RobustDtwResult result = robust_dtw(x, y, config.dtw);
  if (!result.converged) {
    std::cerr << "note: a solver stopped at its iteration budget; the distance is still valid\n";
  }
  if (result.single_level) {
    std::cerr << "note: inputs are shorter than min_level_size; single-level alignment used\n";
  }

  if (!args.emit_path.empty()) {
    ordered_json doc;
    doc["pair"] = {x.name, y.name};
    doc["distance"] = result.distance;
    doc["cumulative_cost"] = result.cumulative_cost;
    doc["converged"] = result.converged;
    doc["single_level"] = result.single_level;
    ordered_json path = ordered_json::array();
    for (const auto& [i, j] : result.path) path.push_back({i, j});
    doc["path"] = std::move(path);
    doc["x_trend"] = result.x_trend.values;
    doc["y_trend"] = result.y_trend.values;
    ordered_json levels = ordered_json::array();
    for (const LevelTrace& lv : result.levels) {
      levels.push_back({{"level", lv.level},
                        {"x_len", lv.x_len},
                        {"y_len", lv.y_len},
                        {"cost", lv.cost},
                        {"iterations", lv.iterations}});
    }
    doc["levels"] = std::move(levels);
    write_text(args.emit_path, doc.dump(2) + "\n");
  }

  std::cout << format_real(result.distance) << "\n";
  return 0;
}

struct OutlierArgs {
  std::string input;
  std::string measure = "robustdtw";
  int k = 0;
  double contamination = 0.0;
  std::string inject;
  int inject_count = 5;
  double inject_magnitude = 10.0;
  std::uint64_t seed = 0;
  std::string truth;
  std::string config_path;
  std::string emit;
  bool k_set = false;
  bool contamination_set = false;
};

int run_outliers(const OutlierArgs& args) {
  AppConfig config;
  if (!args.config_path.empty()) config = load_app_config(args.config_path);
  if (args.k_set) config.lof.k_neighbors = args.k;
  if (args.contamination_set) config.lof.contamination = args.contamination;
  const DistanceMeasure measure = parse_measure(args.measure);

  std::vector<TimeSeries> series = load_series(args.input, format_for(args.input));

  // A column literally named "truth" carries per-series 0/1 labels in column
  // order instead of data; --truth lists outlier names directly.
  std::vector<bool> truth;
  bool have_truth = false;
  const auto truth_it = std::find_if(series.begin(), series.end(),
                                     [](const TimeSeries& s) { return s.name == "truth"; });
  if (truth_it != series.end()) {
    const TimeSeries truth_col = *truth_it;
    series.erase(truth_it);
    if (truth_col.size() < series.size()) {
      throw std::invalid_argument("truth column has fewer entries than there are series");
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
      const double v = truth_col.values[i];
      if (v != 0.0 && v != 1.0) {
        throw std::invalid_argument("truth column entries must be 0 or 1");
      }
      truth.push_back(v == 1.0);
    }
    have_truth = true;
  }
  if (!args.truth.empty()) {
    if (have_truth) {
      throw std::invalid_argument("supply either --truth or a truth column, not both");
    }
    truth.assign(series.size(), false);
    for (const std::string& name : split_list(args.truth)) {
      bool found = false;
      for (std::size_t i = 0; i < series.size(); ++i) {
        if (series[i].name == name) {
          truth[i] = true;
          found = true;
        }
      }
      if (!found) throw std::invalid_argument("--truth names unknown series '" + name + "'");
    }
    have_truth = true;
  }

  if (!args.inject.empty()) {
    const NoiseKind kind = parse_noise_kind(args.inject);
    for (std::size_t i = 0; i < series.size(); ++i) {
      series[i] = inject_noise(series[i], kind, args.inject_count, args.inject_magnitude,
                               args.seed + i);
    }
  }

  const LofResult result = detect_outliers(series, config.dtw, config.lof, measure);

  ordered_json doc;
  doc["measure"] = measure_name(measure);
  doc["k"] = config.lof.k_neighbors;
  doc["contamination"] = config.lof.contamination;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < series.size(); ++i) {
    rows.push_back({{"name", series[i].name},
                    {"score", json_number(result.scores[i])},
                    {"label", static_cast<bool>(result.labels[i])}});
  }
  doc["series"] = std::move(rows);
  doc["threshold"] = json_number(result.threshold);
  if (have_truth) doc["auc"] = auc_score(result.scores, truth);

  const std::string text = doc.dump(2) + "\n";
  if (args.emit.empty()) {
    std::cout << text;
  } else {
    write_text(args.emit, text);
  }
  return 0;
}

struct PeriodArgs {
  std::string input;
  std::string series_name;
  int period = 0;
  double threshold = 0.0;
  std::string measure = "robustdtw";
  std::string config_path;
  std::string emit;
  bool threshold_set = false;
};

int run_period(const PeriodArgs& args) {
  AppConfig config;
  if (!args.config_path.empty()) config = load_app_config(args.config_path);
  if (args.threshold_set) config.period_threshold = args.threshold;
  const DistanceMeasure measure = parse_measure(args.measure);

  const auto series = load_series(args.input, format_for(args.input));
  const TimeSeries* target = nullptr;
  if (!args.series_name.empty()) {
    target = &find_series(series, args.series_name);
  } else if (series.size() == 1) {
    target = &series.front();
  } else {
    throw std::invalid_argument("input has " + std::to_string(series.size()) +
                                " series; choose one with --series");
  }

  const PeriodicityResult result =
      detect_periodicity(*target, config.periodicity(args.period), measure);

  ordered_json doc;
  doc["name"] = target->name;
  doc["period"] = args.period;
  doc["measure"] = measure_name(measure);
  doc["threshold"] = config.period_threshold;
  doc["is_periodic"] = result.is_periodic;
  doc["score"] = result.score;
  doc["segment_distances"] = result.segment_distances;
  ordered_json retained = ordered_json::array();
  for (bool kept : result.retained_mask) retained.push_back(kept);
  doc["retained"] = std::move(retained);

  const std::string text = doc.dump(2) + "\n";
  if (args.emit.empty()) {
    std::cout << text;
  } else {
    write_text(args.emit, text);
  }
  return 0;
}

struct BenchArgs {
  std::string lengths;
  std::string measures = "dtw,fastdtw,robustdtw";
  int repeats = 5;
  std::string config_path;
  std::string emit;
};

int run_bench(const BenchArgs& args) {
  AppConfig config;
  if (!args.config_path.empty()) config = load_app_config(args.config_path);

  std::vector<std::size_t> lengths;
  for (const std::string& part : split_list(args.lengths)) {
    std::size_t value = 0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), value);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size()) {
      throw std::invalid_argument("--lengths: cannot parse '" + part + "'");
    }
    lengths.push_back(value);
  }
  std::vector<DistanceMeasure> measures;
  for (const std::string& part : split_list(args.measures)) {
    measures.push_back(parse_measure(part));
  }

  const BenchReport report = run_scaling_bench(lengths, measures, args.repeats, config.dtw);
  for (const BenchRow& row : report.rows) {
    if (row.failed) {
      std::cerr << "note: " << row.measure << " at length " << row.length << " failed\n";
    }
  }

  const std::string text = bench_csv(report);
  if (args.emit.empty()) {
    std::cout << text;
  } else {
    write_text(args.emit, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust time-series distance, outlier, and periodicity toolkit"};
  app.require_subcommand(1);

  DistArgs dist;
  CLI::App* dist_cmd =
      app.add_subcommand("dist", "Distance between two series from one input file");
  dist_cmd->add_option("--input", dist.input, "Input series file (.csv or .json)")->required();
  dist_cmd->add_option("--pair", dist.pair, "Two comma-separated series names")->required();
  dist_cmd->add_option("--config", dist.config_path, "JSON config file");
  dist_cmd->add_option("--emit-path", dist.emit_path, "Write path/trend JSON to this file");

  OutlierArgs outliers;
  CLI::App* outliers_cmd =
      app.add_subcommand("outliers", "Score and label outlier series with LOF");
  outliers_cmd->add_option("--input", outliers.input, "Input series file (.csv or .json)")
      ->required();
  outliers_cmd->add_option("--measure", outliers.measure,
                           "robustdtw, dtw, fastdtw, or euclidean");
  CLI::Option* k_opt = outliers_cmd->add_option("--k", outliers.k, "LOF neighbor count");
  CLI::Option* cont_opt = outliers_cmd->add_option("--contamination", outliers.contamination,
                                                   "Fraction labeled as outliers, in (0, 1)");
  outliers_cmd->add_option("--inject", outliers.inject,
                           "Perturb every series first: spikes, dips, or both");
  outliers_cmd->add_option("--inject-count", outliers.inject_count,
                           "Positions perturbed per series");
  outliers_cmd->add_option("--inject-magnitude", outliers.inject_magnitude,
                           "Perturbation size in robust-scale units");
  outliers_cmd->add_option("--seed", outliers.seed, "Base seed for --inject");
  outliers_cmd->add_option("--truth", outliers.truth,
                           "Comma-separated names of the true outliers (enables AUC)");
  outliers_cmd->add_option("--config", outliers.config_path, "JSON config file");
  outliers_cmd->add_option("--emit", outliers.emit, "Write the JSON report to this file");

  PeriodArgs period;
  CLI::App* period_cmd = app.add_subcommand("period", "Periodicity check for one series");
  period_cmd->add_option("--input", period.input, "Input series file (.csv or .json)")
      ->required();
  period_cmd->add_option("--series", period.series_name,
                         "Series name (defaults to the only series)");
  period_cmd->add_option("--period", period.period, "Candidate period T in samples")->required();
  CLI::Option* thr_opt =
      period_cmd->add_option("--threshold", period.threshold, "Decision threshold");
  period_cmd->add_option("--measure", period.measure, "robustdtw, dtw, fastdtw, or euclidean");
  period_cmd->add_option("--config", period.config_path, "JSON config file");
  period_cmd->add_option("--emit", period.emit, "Write the JSON report to this file");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Runtime scaling benchmark");
  bench_cmd->add_option("--lengths", bench.lengths, "Comma-separated series lengths, ascending")
      ->required();
  bench_cmd->add_option("--measures", bench.measures, "Comma-separated measure names");
  bench_cmd->add_option("--repeats", bench.repeats, "Timing repeats per cell (>= 5)");
  bench_cmd->add_option("--config", bench.config_path, "JSON config file");
  bench_cmd->add_option("--emit", bench.emit, "Write the CSV report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  outliers.k_set = k_opt->count() > 0;
  outliers.contamination_set = cont_opt->count() > 0;
  period.threshold_set = thr_opt->count() > 0;

  try {
    if (dist_cmd->parsed()) return run_dist(dist);
    if (outliers_cmd->parsed()) return run_outliers(outliers);
    if (period_cmd->parsed()) return run_period(period);
    if (bench_cmd->parsed()) return run_bench(bench);
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
