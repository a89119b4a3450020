#pragma once

#include <string>

#include "robustdtw/lof.hpp"
#include "robustdtw/periodicity.hpp"
#include "robustdtw/robust_dtw.hpp"

namespace robustdtw {

// Flat knob bundle shared by the command-line subcommands. Every field is
// optional in the JSON file and falls back to the owning module's default.
// The distance keys land in two bundles: `dtw` backs the dist, outliers, and
// bench subcommands, while `period_dtw` backs segment comparison and starts
// from the lighter periodicity defaults.
struct AppConfig {
  RobustDtwConfig dtw;
  RobustDtwConfig period_dtw = periodicity_slice_config();
  LofConfig lof;
  double period_threshold = kDefaultPeriodicityThreshold;
  double iqr_factor = 1.5;

  PeriodicityConfig periodicity(int period) const {
    PeriodicityConfig config;
    config.period = period;
    config.threshold = period_threshold;
    config.iqr_factor = iqr_factor;
    config.dtw_config = period_dtw;
    return config;
  }
};

// Parses a single flat JSON object. Unknown keys are rejected by name and
// every value is checked against the owning type's range. The solver keys
// (rho, eps_abs, eps_rel, max_iter) apply to the per-series and the graph
// solver alike.
AppConfig parse_app_config(const std::string& json_text);
AppConfig load_app_config(const std::string& path);

}  // namespace robustdtw
