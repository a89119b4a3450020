#include "robustdtw/temporal_graph.hpp"

#include <map>
#include <string>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace robustdtw {

namespace {

void merge_edge(std::map<std::pair<int, int>, double>& edges, int a, int b, double weight) {
  if (a == b) return;
  if (a > b) std::swap(a, b);
  auto [it, inserted] = edges.emplace(std::make_pair(a, b), weight);
  if (!inserted && it->second < weight) it->second = weight;
}

TemporalGraph from_edge_map(int m, int n, const std::map<std::pair<int, int>, double>& edges) {
  TemporalGraph graph;
  graph.x_count = m;
  graph.y_count = n;
  graph.num_vertices = m + n;
  graph.edges.reserve(edges.size());
  for (const auto& [key, weight] : edges) {
    graph.edges.push_back(GraphEdge{key.first, key.second, weight});
  }
  return graph;
}

}  // namespace

TemporalGraph build_graph(int m, int n, const WarpPath& path, const GraphDetrendConfig& config) {
  if (m < 1 || n < 1) throw std::invalid_argument("graph needs non-empty series");
  if (!is_valid_path(path, m, n)) {
    throw std::invalid_argument("alignment path does not fit the series lengths");
  }
  if (config.cross_weight <= 0.0 || config.robust_edge_weight <= 0.0) {
    throw std::invalid_argument("graph edge weights must be positive");
  }
  if (config.neighborhood < 0) {
    throw std::invalid_argument("graph neighborhood must be non-negative");
  }

  std::map<std::pair<int, int>, double> edges;
  for (int i = 0; i + 1 < m; ++i) merge_edge(edges, i, i + 1, 1.0);
  for (int j = 0; j + 1 < n; ++j) merge_edge(edges, m + j, m + j + 1, 1.0);
  for (const auto& [t, s] : path) {
    merge_edge(edges, t, m + s, config.cross_weight);
    for (int d = 1; d <= config.neighborhood; ++d) {
      if (s - d >= 0) merge_edge(edges, t, m + s - d, config.robust_edge_weight);
      if (s + d < n) merge_edge(edges, t, m + s + d, config.robust_edge_weight);
      if (t - d >= 0) merge_edge(edges, t - d, m + s, config.robust_edge_weight);
      if (t + d < m) merge_edge(edges, t + d, m + s, config.robust_edge_weight);
    }
  }
  return from_edge_map(m, n, edges);
}

TemporalGraph chain_graph(int n) {
  if (n < 1) throw std::invalid_argument("chain graph needs at least one vertex");
  std::map<std::pair<int, int>, double> edges;
  for (int i = 0; i + 1 < n; ++i) merge_edge(edges, i, i + 1, 1.0);
  return from_edge_map(n, 0, edges);
}

std::vector<double> GraphDifferenceOperator::apply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != cols) {
    throw std::invalid_argument("graph operator expects length " + std::to_string(cols));
  }
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    double acc = 0.0;
    for (const auto& [col, coeff] : row) acc += coeff * x[col];
    out.push_back(acc);
  }
  return out;
}

GraphDifferenceOperator graph_diff_op(const TemporalGraph& graph, int order) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("graph difference operator order must be 1 or 2");
  }
  GraphDifferenceOperator op;
  op.order = order;
  op.cols = graph.num_vertices;
  if (order == 1) {
    op.rows.reserve(graph.edges.size());
    for (const auto& edge : graph.edges) {
      op.rows.push_back({{edge.a, -edge.weight}, {edge.b, edge.weight}});
    }
    return op;
  }
  // Weighted Laplacian: diagonal sum of squared incident weights, off-diagonal
  // -weight^2 per edge.
  std::vector<std::map<int, double>> laplacian(graph.num_vertices);
  for (const auto& edge : graph.edges) {
    const double w2 = edge.weight * edge.weight;
    laplacian[edge.a][edge.a] += w2;
    laplacian[edge.b][edge.b] += w2;
    laplacian[edge.a][edge.b] -= w2;
    laplacian[edge.b][edge.a] -= w2;
  }
  op.rows.reserve(graph.num_vertices);
  for (const auto& row : laplacian) {
    SparseRow sparse;
    sparse.reserve(row.size());
    for (const auto& [col, coeff] : row) sparse.emplace_back(col, coeff);
    op.rows.push_back(std::move(sparse));
  }
  return op;
}

PenaltyTerm penalty_term(const GraphDifferenceOperator& op, double lambda) {
  return PenaltyTerm{op.rows, op.cols, lambda};
}

GraphDetrendResult graph_detrend(const TimeSeries& u, const TimeSeries& v, const WarpPath& path,
                                 const GraphDetrendConfig& config) {
  const int m = static_cast<int>(u.size());
  const int n = static_cast<int>(v.size());
  if (config.lambda1 < 0.0 || config.lambda2 < 0.0) {
    throw std::invalid_argument("graph penalty weights must be non-negative");
  }
  const TemporalGraph graph = build_graph(m, n, path, config);

  std::vector<double> target;
  target.reserve(u.size() + v.size());
  target.insert(target.end(), u.values.begin(), u.values.end());
  target.insert(target.end(), v.values.begin(), v.values.end());

  std::vector<PenaltyTerm> penalties;
  if (config.lambda1 > 0.0) {
    penalties.push_back(penalty_term(graph_diff_op(graph, 1), config.lambda1));
  }
  if (config.lambda2 > 0.0) {
    penalties.push_back(penalty_term(graph_diff_op(graph, 2), config.lambda2));
  }
  const AdmmResult fit =
      generalized_lasso_admm(target, Fidelity::squared, penalties, config.solver);

  GraphDetrendResult out;
  out.x_trend.name = u.name;
  out.x_trend.values.assign(fit.solution.begin(), fit.solution.begin() + m);
  out.y_trend.name = v.name;
  out.y_trend.values.assign(fit.solution.begin() + m, fit.solution.end());
  out.converged = fit.converged;
  out.iterations = fit.iterations;
  return out;
}

std::string graph_json(const TemporalGraph& graph) {
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const GraphEdge& e : graph.edges) {
    edges.push_back({{"a", e.a}, {"b", e.b}, {"weight", e.weight}});
  }
  return edges.dump(2);
}

}  // namespace robustdtw
