#include "robustdtw/lof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "robustdtw/rng.hpp"

namespace robustdtw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_matrix(const std::vector<std::vector<double>>& dist) {
  const std::size_t n = dist.size();
  if (n < 2) throw std::invalid_argument("lof_scores: need at least 2 points");
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) {
      throw std::invalid_argument("lof_scores: distance matrix is not square");
    }
    if (dist[i][i] != 0.0) {
      throw std::invalid_argument("lof_scores: diagonal must be zero");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist[i][j];
      if (!(d >= 0.0)) {
        throw std::invalid_argument("lof_scores: entries must be non-negative");
      }
      if (dist[j][i] != d) {
        throw std::invalid_argument("lof_scores: matrix must be symmetric");
      }
    }
  }
}

}  // namespace

std::vector<double> lof_scores(const std::vector<std::vector<double>>& dist, int k) {
  validate_matrix(dist);
  const std::size_t n = dist.size();
  if (k < 1) throw std::invalid_argument("lof_scores: k must be positive");
  if (n < static_cast<std::size_t>(k) + 1) {
    throw std::invalid_argument("lof_scores: need at least k + 1 points");
  }

  // k-distance of each point: k-th smallest distance to the other points.
  std::vector<double> kdist(n);
  std::vector<double> others;
  others.reserve(n - 1);
  for (std::size_t p = 0; p < n; ++p) {
    others.clear();
    for (std::size_t o = 0; o < n; ++o) {
      if (o != p) others.push_back(dist[p][o]);
    }
    std::nth_element(others.begin(), others.begin() + (k - 1), others.end());
    kdist[p] = others[k - 1];
  }

  // Neighborhood of p: every other point within k-distance, ties included.
  std::vector<std::vector<std::size_t>> nbrs(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t o = 0; o < n; ++o) {
      if (o != p && dist[p][o] <= kdist[p]) nbrs[p].push_back(o);
    }
  }

  // Local reachability density; a zero reach-distance sum means a duplicate
  // cluster and gives an infinite density.
  std::vector<double> lrd(n);
  for (std::size_t p = 0; p < n; ++p) {
    double sum = 0.0;
    for (std::size_t o : nbrs[p]) sum += std::max(kdist[o], dist[p][o]);
    lrd[p] = sum > 0.0 ? static_cast<double>(nbrs[p].size()) / sum : kInf;
  }

  std::vector<double> scores(n);
  for (std::size_t p = 0; p < n; ++p) {
    double sum = 0.0;
    for (std::size_t o : nbrs[p]) {
      if (lrd[o] == kInf && lrd[p] == kInf) {
        sum += 1.0;
      } else {
        sum += lrd[o] / lrd[p];  // finite/inf -> 0, inf/finite -> inf
      }
    }
    scores[p] = sum / static_cast<double>(nbrs[p].size());
  }
  return scores;
}

LofResult label_scores(const std::vector<double>& scores, double contamination) {
  if (!(contamination > 0.0 && contamination < 1.0)) {
    throw std::invalid_argument("label_scores: contamination must be in (0, 1)");
  }
  const std::size_t n = scores.size();
  if (n == 0) throw std::invalid_argument("label_scores: no scores");
  for (double s : scores) {
    if (std::isnan(s)) throw std::invalid_argument("label_scores: NaN score");
  }
  const std::size_t count = std::min(
      n, static_cast<std::size_t>(std::ceil(contamination * static_cast<double>(n))));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });

  LofResult result;
  result.scores = scores;
  result.labels.assign(n, false);
  for (std::size_t i = 0; i < count; ++i) result.labels[order[i]] = true;
  result.threshold = scores[order[count - 1]];
  return result;
}

LofResult detect_outliers(const std::vector<TimeSeries>& series,
                          const RobustDtwConfig& dtw_config, const LofConfig& lof_config,
                          DistanceMeasure measure, int num_threads) {
  const auto dist = measure_distance_matrix(series, measure, dtw_config, num_threads);
  const auto scores = lof_scores(dist, lof_config.k_neighbors);
  return label_scores(scores, lof_config.contamination);
}

NoiseKind parse_noise_kind(const std::string& name) {
  if (name == "spikes") return NoiseKind::spikes;
  if (name == "dips") return NoiseKind::dips;
  if (name == "both") return NoiseKind::both;
  throw std::invalid_argument("unknown noise kind '" + name +
                              "' (expected spikes, dips, or both)");
}

std::string noise_kind_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::spikes: return "spikes";
    case NoiseKind::dips: return "dips";
    case NoiseKind::both: return "both";
  }
  throw std::invalid_argument("unknown noise kind");
}

TimeSeries inject_noise(const TimeSeries& series, NoiseKind kind, int count,
                        double magnitude, std::uint64_t seed) {
  const std::size_t n = series.size();
  if (count < 0) throw std::invalid_argument("inject_noise: count must be >= 0");
  if (static_cast<std::size_t>(count) * 4 >= n) {
    throw std::invalid_argument("inject_noise: count must be below length / 4");
  }
  if (!std::isfinite(magnitude)) {
    throw std::invalid_argument("inject_noise: magnitude must be finite");
  }

  TimeSeries out = series;
  if (count == 0) return out;
  const double scale = biweight_scale(series);

  Rng rng(seed);
  std::vector<bool> used(n, false);
  for (int i = 0; i < count; ++i) {
    std::size_t pos = static_cast<std::size_t>(rng.integer(n));
    while (used[pos]) pos = static_cast<std::size_t>(rng.integer(n));
    used[pos] = true;
    const bool spike = kind == NoiseKind::spikes || (kind == NoiseKind::both && i % 2 == 0);
    out.values[pos] += spike ? magnitude * scale : -magnitude * scale;
  }
  return out;
}

double auc_score(const std::vector<double>& scores, const std::vector<bool>& truth) {
  const std::size_t n = scores.size();
  if (truth.size() != n) {
    throw std::invalid_argument("auc_score: scores and truth lengths differ");
  }
  std::size_t pos = 0;
  for (bool t : truth) pos += t ? 1 : 0;
  const std::size_t neg = n - pos;
  if (pos == 0 || neg == 0) {
    throw std::invalid_argument("auc_score: need at least one positive and one negative");
  }
  for (double s : scores) {
    if (std::isnan(s)) throw std::invalid_argument("auc_score: NaN score");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Average ranks over tie groups, then the rank-sum statistic.
  double pos_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
    for (std::size_t t = i; t < j; ++t) {
      if (truth[order[t]]) pos_rank_sum += avg_rank;
    }
    i = j;
  }
  const double u = pos_rank_sum - 0.5 * static_cast<double>(pos) * static_cast<double>(pos + 1);
  return u / (static_cast<double>(pos) * static_cast<double>(neg));
}

}  // namespace robustdtw
