#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "robustdtw/dtw.hpp"
#include "robustdtw/lof.hpp"
#include "robustdtw/periodicity.hpp"
#include "robustdtw/robust_dtw.hpp"
#include "robustdtw/series.hpp"
#include "robustdtw/synth.hpp"
#include "robustdtw/temporal_graph.hpp"
#include "robustdtw/trend_filter.hpp"

namespace py = pybind11;
using namespace robustdtw;

PYBIND11_MODULE(_robustdtw, m) {
  m.doc() = "Noise- and outlier-robust time-series dissimilarity toolkit";

  py::class_<TimeSeries>(m, "TimeSeries")
      .def(py::init<std::vector<double>, std::string>(), py::arg("values"),
           py::arg("name") = "")
      .def_readwrite("name", &TimeSeries::name)
      .def_readwrite("values", &TimeSeries::values)
      .def("__len__", &TimeSeries::size)
      .def("__repr__", [](const TimeSeries& s) {
        return "TimeSeries(name='" + s.name + "', n=" + std::to_string(s.size()) + ")";
      });

  py::class_<RobustStats>(m, "RobustStats")
      .def_readonly("median", &RobustStats::median)
      .def_readonly("mad", &RobustStats::mad)
      .def_readonly("biweight_scale", &RobustStats::biweight_scale)
      .def_readonly("tuning_constant", &RobustStats::tuning_constant);

  m.def("median", py::overload_cast<const TimeSeries&>(&median), py::arg("series"));
  m.def("mad", &mad, py::arg("values"));
  m.def("biweight_scale",
        py::overload_cast<const TimeSeries&, double>(&biweight_scale), py::arg("series"),
        py::arg("tuning_constant") = kDefaultTuningConstant);
  m.def("robust_stats", &robust_stats, py::arg("series"),
        py::arg("tuning_constant") = kDefaultTuningConstant);
  m.def("robust_normalize", &robust_normalize, py::arg("series"));

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("lambda1", &SolverConfig::lambda1)
      .def_readwrite("lambda2", &SolverConfig::lambda2)
      .def_readwrite("huber_gamma", &SolverConfig::huber_gamma)
      .def_readwrite("rho", &SolverConfig::rho)
      .def_readwrite("eps_abs", &SolverConfig::eps_abs)
      .def_readwrite("eps_rel", &SolverConfig::eps_rel)
      .def_readwrite("max_iter", &SolverConfig::max_iter);

  py::class_<TrendDecomposition>(m, "TrendDecomposition")
      .def_readonly("trend", &TrendDecomposition::trend)
      .def_readonly("residual", &TrendDecomposition::residual)
      .def_readonly("converged", &TrendDecomposition::converged)
      .def_readonly("iterations", &TrendDecomposition::iterations);

  m.def("robust_trend", &robust_trend, py::arg("series"), py::arg("config") = SolverConfig());

  py::class_<DtwResult>(m, "DtwResult")
      .def_readonly("distance", &DtwResult::distance)
      .def_readonly("cumulative_cost", &DtwResult::cumulative_cost)
      .def_readonly("path", &DtwResult::path);

  m.def("dtw_exact", &dtw_exact, py::arg("x"), py::arg("y"));
  m.def("fast_dtw", &fast_dtw, py::arg("x"), py::arg("y"), py::arg("radius") = 2);

  py::class_<GraphDetrendConfig>(m, "GraphDetrendConfig")
      .def(py::init<>())
      .def_readwrite("lambda1", &GraphDetrendConfig::lambda1)
      .def_readwrite("lambda2", &GraphDetrendConfig::lambda2)
      .def_readwrite("cross_weight", &GraphDetrendConfig::cross_weight)
      .def_readwrite("robust_edge_weight", &GraphDetrendConfig::robust_edge_weight)
      .def_readwrite("neighborhood", &GraphDetrendConfig::neighborhood)
      .def_readwrite("solver", &GraphDetrendConfig::solver);

  py::class_<RobustDtwConfig>(m, "RobustDtwConfig")
      .def(py::init<>())
      .def_readwrite("self_detrend", &RobustDtwConfig::self_detrend)
      .def_readwrite("graph_detrend", &RobustDtwConfig::graph_detrend)
      .def_readwrite("radius", &RobustDtwConfig::radius)
      .def_readwrite("min_level_size", &RobustDtwConfig::min_level_size)
      .def_readwrite("inner_iterations", &RobustDtwConfig::inner_iterations)
      .def_readwrite("early_exit_rel_change", &RobustDtwConfig::early_exit_rel_change);

  py::class_<LevelTrace>(m, "LevelTrace")
      .def_readonly("level", &LevelTrace::level)
      .def_readonly("x_len", &LevelTrace::x_len)
      .def_readonly("y_len", &LevelTrace::y_len)
      .def_readonly("cost", &LevelTrace::cost)
      .def_readonly("iterations", &LevelTrace::iterations);

  py::class_<RobustDtwResult>(m, "RobustDtwResult")
      .def_readonly("distance", &RobustDtwResult::distance)
      .def_readonly("cumulative_cost", &RobustDtwResult::cumulative_cost)
      .def_readonly("path", &RobustDtwResult::path)
      .def_readonly("x_trend", &RobustDtwResult::x_trend)
      .def_readonly("y_trend", &RobustDtwResult::y_trend)
      .def_readonly("converged", &RobustDtwResult::converged)
      .def_readonly("single_level", &RobustDtwResult::single_level)
      .def_readonly("levels", &RobustDtwResult::levels);

  m.def("robust_dtw", &robust_dtw, py::arg("x"), py::arg("y"),
        py::arg("config") = RobustDtwConfig());
  m.def("upsample_trend", &upsample_trend, py::arg("series"), py::arg("target_len"));
  m.def("distance_matrix", &distance_matrix, py::arg("series"),
        py::arg("config") = RobustDtwConfig(), py::arg("num_threads") = 0);
  m.def(
      "measure_distance",
      [](const TimeSeries& x, const TimeSeries& y, const std::string& measure,
         const RobustDtwConfig& config) {
        return measure_distance(x, y, parse_measure(measure), config);
      },
      py::arg("x"), py::arg("y"), py::arg("measure") = "robustdtw",
      py::arg("config") = RobustDtwConfig());
  m.def(
      "measure_distance_matrix",
      [](const std::vector<TimeSeries>& series, const std::string& measure,
         const RobustDtwConfig& config, int num_threads) {
        return measure_distance_matrix(series, parse_measure(measure), config, num_threads);
      },
      py::arg("series"), py::arg("measure") = "robustdtw",
      py::arg("config") = RobustDtwConfig(), py::arg("num_threads") = 0);

  py::class_<LofConfig>(m, "LofConfig")
      .def(py::init<>())
      .def_readwrite("k_neighbors", &LofConfig::k_neighbors)
      .def_readwrite("contamination", &LofConfig::contamination);

  py::class_<LofResult>(m, "LofResult")
      .def_readonly("scores", &LofResult::scores)
      .def_readonly("labels", &LofResult::labels)
      .def_readonly("threshold", &LofResult::threshold);

  m.def("lof_scores", &lof_scores, py::arg("dist"), py::arg("k"));
  m.def(
      "detect_outliers",
      [](const std::vector<TimeSeries>& series, const RobustDtwConfig& dtw_config,
         const LofConfig& lof_config, const std::string& measure, int num_threads) {
        return detect_outliers(series, dtw_config, lof_config, parse_measure(measure),
                               num_threads);
      },
      py::arg("series"), py::arg("dtw_config") = RobustDtwConfig(),
      py::arg("lof_config") = LofConfig(), py::arg("measure") = "robustdtw",
      py::arg("num_threads") = 0);
  m.def(
      "inject_noise",
      [](const TimeSeries& series, const std::string& kind, int count, double magnitude,
         std::uint64_t seed) {
        return inject_noise(series, parse_noise_kind(kind), count, magnitude, seed);
      },
      py::arg("series"), py::arg("kind"), py::arg("count"), py::arg("magnitude"),
      py::arg("seed"));
  m.def("auc_score", &auc_score, py::arg("scores"), py::arg("truth"));

  py::class_<PeriodicityConfig>(m, "PeriodicityConfig")
      .def(py::init<>())
      .def_readwrite("period", &PeriodicityConfig::period)
      .def_readwrite("threshold", &PeriodicityConfig::threshold)
      .def_readwrite("iqr_factor", &PeriodicityConfig::iqr_factor)
      .def_readwrite("dtw_config", &PeriodicityConfig::dtw_config);

  py::class_<PeriodicityResult>(m, "PeriodicityResult")
      .def_readonly("is_periodic", &PeriodicityResult::is_periodic)
      .def_readonly("score", &PeriodicityResult::score)
      .def_readonly("segment_distances", &PeriodicityResult::segment_distances)
      .def_readonly("retained_mask", &PeriodicityResult::retained_mask);

  m.def("slice_segments", &slice_segments, py::arg("series"), py::arg("period"));
  m.def("iqr_filter", &iqr_filter, py::arg("values"), py::arg("factor") = 1.5);
  m.def(
      "detect_periodicity",
      [](const TimeSeries& series, const PeriodicityConfig& config, const std::string& measure) {
        return detect_periodicity(series, config, parse_measure(measure));
      },
      py::arg("series"), py::arg("config"), py::arg("measure") = "robustdtw");

  m.def(
      "generate",
      [](const std::string& kind, std::size_t length, double noise_sigma, double trend_slope,
         std::uint64_t seed) {
        GeneratorSpec spec;
        spec.kind = parse_generator_kind(kind);
        spec.length = length;
        spec.noise_sigma = noise_sigma;
        spec.trend_slope = trend_slope;
        spec.seed = seed;
        return generate(spec);
      },
      py::arg("kind"), py::arg("length"), py::arg("noise_sigma") = 0.0,
      py::arg("trend_slope") = 0.0, py::arg("seed") = 0);
  m.def(
      "make_outlier_corpus",
      [](int n_normal, int n_outlier, std::size_t length, std::uint64_t seed) {
        OutlierCorpus corpus = make_outlier_corpus(n_normal, n_outlier, length, seed);
        return py::make_tuple(corpus.series, corpus.truth);
      },
      py::arg("n_normal"), py::arg("n_outlier"), py::arg("length"), py::arg("seed") = 0);

  py::register_exception<std::invalid_argument>(m, "ValidationError", PyExc_ValueError);
}
