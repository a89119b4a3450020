#pragma once

#include <string>
#include <vector>

#include "robustdtw/dtw.hpp"
#include "robustdtw/series.hpp"
#include "robustdtw/trend_filter.hpp"

namespace robustdtw {

// Undirected weighted edge with a < b and weight > 0.
struct GraphEdge {
  int a = 0;
  int b = 0;
  double weight = 0.0;
};

// Graph over the concatenated samples of two aligned series: vertices
// 0..m-1 are x samples, m..m+n-1 are y samples.
struct TemporalGraph {
  int x_count = 0;
  int y_count = 0;
  int num_vertices = 0;
  std::vector<GraphEdge> edges;  // sorted by (a, b), duplicates merged to max weight
};

// The graph penalties act on robust-normalized, self-detrended series, so the
// defaults are small: heavier weights fuse aligned samples and erase the very
// differences the distance must report.
struct GraphDetrendConfig {
  double lambda1 = 0.5;
  double lambda2 = 0.1;
  double cross_weight = 1.0;
  double robust_edge_weight = 0.5;
  int neighborhood = 1;  // alignment slack: extra edges to indices within +/- this
  SolverConfig solver;   // rho, tolerances, max_iter (its lambda fields are unused here)
};

// Chain edges along each series (weight 1), a cross edge per path pair, and
// robustness edges pairing each aligned sample with its neighbors' partners;
// out-of-range candidates are clipped, duplicates keep the maximum weight.
TemporalGraph build_graph(int m, int n, const WarpPath& path, const GraphDetrendConfig& config);

// Path graph on n vertices with unit weights: the univariate reduction case.
TemporalGraph chain_graph(int n);

// Order 1: one row per edge, -weight at the lower endpoint, +weight at the
// other. Order 2: (order 1)^T (order 1), the weighted graph Laplacian, one
// row per vertex.
struct GraphDifferenceOperator {
  int order = 1;
  int cols = 0;
  std::vector<SparseRow> rows;

  std::vector<double> apply(const std::vector<double>& x) const;
};

GraphDifferenceOperator graph_diff_op(const TemporalGraph& graph, int order);
PenaltyTerm penalty_term(const GraphDifferenceOperator& op, double lambda);

struct GraphDetrendResult {
  TimeSeries x_trend;
  TimeSeries y_trend;
  bool converged = true;
  int iterations = 0;
};

// Joint detrending of two aligned series: squared fidelity against the
// concatenated inputs plus L1 penalties on both graph difference operators.
GraphDetrendResult graph_detrend(const TimeSeries& u, const TimeSeries& v, const WarpPath& path,
                                 const GraphDetrendConfig& config);

// JSON edge list [{"a": .., "b": .., "weight": ..}, ...] in stored order.
std::string graph_json(const TemporalGraph& graph);

}  // namespace robustdtw
