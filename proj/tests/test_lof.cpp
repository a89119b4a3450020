#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "robustdtw/lof.hpp"
#include "robustdtw/rng.hpp"
#include "robustdtw/series.hpp"
#include "robustdtw/synth.hpp"
#include "support/oracles.hpp"

using robustdtw::LofConfig;
using robustdtw::LofResult;
using robustdtw::NoiseKind;
using robustdtw::Rng;
using robustdtw::TimeSeries;

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix euclidean_matrix(const std::vector<std::pair<double, double>>& points) {
  const std::size_t n = points.size();
  Matrix dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = points[i].first - points[j].first;
      const double dy = points[i].second - points[j].second;
      dist[i][j] = dist[j][i] = std::sqrt(dx * dx + dy * dy);
    }
  }
  return dist;
}

std::vector<std::pair<double, double>> random_points(std::uint64_t seed, std::size_t n,
                                                     bool with_duplicates) {
  Rng rng(seed);
  std::vector<std::pair<double, double>> pts(n);
  for (auto& p : pts) p = {rng.gaussian(), rng.gaussian()};
  if (with_duplicates && n >= 6) {
    pts[1] = pts[0];
    pts[4] = pts[3];
    pts[5] = pts[3];
  }
  return pts;
}

void check_close(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(std::abs(got[i] - want[i]) <= tol);
  }
}

TimeSeries unit_sine(std::uint64_t seed, std::size_t n, double sigma) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = std::sin(6.283185307179586 * static_cast<double>(k) / static_cast<double>(n)) +
           sigma * rng.gaussian();
  }
  return TimeSeries(std::move(v));
}

}  // namespace

TEST_SUITE("lof") {

TEST_CASE("scores match the definitional oracle") {
  int trial = 0;
  for (const std::size_t n : {5u, 10u, 25u, 50u}) {
    for (const int k : {2, 3, 5}) {
      if (static_cast<std::size_t>(k) + 1 > n) continue;
      const bool dup = (trial % 3 == 0);
      const Matrix dist = euclidean_matrix(random_points(1000 + trial, n, dup));
      check_close(robustdtw::lof_scores(dist, k), oracle::lof_brute(dist, k), 1e-9);
      ++trial;
    }
  }
  const Matrix big = euclidean_matrix(random_points(2000, 50, false));
  check_close(robustdtw::lof_scores(big, 30), oracle::lof_brute(big, 30), 1e-9);
}

TEST_CASE("uniform grid points are unsurprising") {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < 9; ++i) pts.push_back({static_cast<double>(i), 0.0});
  const std::vector<double> scores = robustdtw::lof_scores(euclidean_matrix(pts), 2);
  // Ends depress their neighbors' densities two steps in; 3..5 are clear.
  for (int i = 3; i <= 5; ++i) {
    CHECK(scores[i] >= 0.9);
    CHECK(scores[i] <= 1.1);
  }
}

TEST_CASE("identical points all score one") {
  const Matrix zeros(12, std::vector<double>(12, 0.0));
  for (double s : robustdtw::lof_scores(zeros, 3)) CHECK(s == 1.0);
}

TEST_CASE("a far point dominates a tight cluster") {
  Rng rng(77);
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < 20; ++i) pts.push_back({rng.gaussian(), rng.gaussian()});
  pts.push_back({50.0, 0.0});
  const Matrix dist = euclidean_matrix(pts);
  const std::vector<double> scores = robustdtw::lof_scores(dist, 3);
  check_close(scores, oracle::lof_brute(dist, 3), 1e-9);
  const std::size_t top =
      std::max_element(scores.begin(), scores.end()) - scores.begin();
  CHECK(top == 20);
  for (std::size_t i = 0; i < 20; ++i) CHECK(scores[i] < scores[20]);
}

TEST_CASE("scores ignore uniform distance scaling") {
  const Matrix dist = euclidean_matrix(random_points(3000, 30, true));
  Matrix scaled = dist;
  for (auto& row : scaled) {
    for (double& v : row) v *= 3.0;
  }
  check_close(robustdtw::lof_scores(scaled, 5), robustdtw::lof_scores(dist, 5), 1e-9);
}

TEST_CASE("matrix and parameter validation") {
  const Matrix ok = euclidean_matrix(random_points(4000, 6, false));
  CHECK_THROWS_AS(robustdtw::lof_scores(ok, 0), std::invalid_argument);
  CHECK_THROWS_AS(robustdtw::lof_scores(ok, 6), std::invalid_argument);

  Matrix bad = ok;
  bad[0][0] = 0.5;
  CHECK_THROWS_AS(robustdtw::lof_scores(bad, 2), std::invalid_argument);
  bad = ok;
  bad[0][1] += 1.0;
  CHECK_THROWS_AS(robustdtw::lof_scores(bad, 2), std::invalid_argument);
  bad = ok;
  bad[2][3] = bad[3][2] = -0.1;
  CHECK_THROWS_AS(robustdtw::lof_scores(bad, 2), std::invalid_argument);
  bad = ok;
  bad[1].pop_back();
  CHECK_THROWS_AS(robustdtw::lof_scores(bad, 2), std::invalid_argument);
}

TEST_CASE("labeling takes the contamination quantile with index tie-breaks") {
  const LofResult two = robustdtw::label_scores({5, 3, 5, 1}, 0.5);
  CHECK(two.labels == std::vector<bool>{true, false, true, false});
  CHECK(two.threshold == 5.0);
  CHECK(two.scores == std::vector<double>{5, 3, 5, 1});

  const LofResult tie = robustdtw::label_scores({4, 4, 4, 1}, 0.25);
  CHECK(tie.labels == std::vector<bool>{true, false, false, false});
  CHECK(tie.threshold == 4.0);

  const LofResult three = robustdtw::label_scores({1, 2, 3, 4}, 0.6);
  CHECK(three.labels == std::vector<bool>{false, true, true, true});
  CHECK(three.threshold == 2.0);

  CHECK_THROWS_AS(robustdtw::label_scores({}, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(robustdtw::label_scores({1.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(robustdtw::label_scores({1.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(robustdtw::label_scores({std::nan("")}, 0.5), std::invalid_argument);
}

TEST_CASE("noise injection perturbs exactly the requested positions") {
  const TimeSeries base = unit_sine(8, 64, 0.0);
  const double scale = robustdtw::biweight_scale(base);
  REQUIRE(scale > 0.0);

  CHECK(robustdtw::inject_noise(base, NoiseKind::spikes, 0, 10.0, 1).values == base.values);

  const TimeSeries one = robustdtw::inject_noise(base, NoiseKind::spikes, 1, 10.0, 5);
  int changed = 0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double diff = one.values[i] - base.values[i];
    if (diff != 0.0) {
      ++changed;
      CHECK(std::abs(diff - 10.0 * scale) <= 1e-12 * (1.0 + 10.0 * scale));
    }
  }
  CHECK(changed == 1);

  const TimeSeries dipped = robustdtw::inject_noise(base, NoiseKind::dips, 3, 10.0, 6);
  int dips = 0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double diff = dipped.values[i] - base.values[i];
    if (diff != 0.0) {
      ++dips;
      CHECK(diff < 0.0);
    }
  }
  CHECK(dips == 3);

  const TimeSeries mixed = robustdtw::inject_noise(base, NoiseKind::both, 4, 10.0, 7);
  int ups = 0, downs = 0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double diff = mixed.values[i] - base.values[i];
    if (diff > 0.0) ++ups;
    if (diff < 0.0) ++downs;
  }
  CHECK(ups == 2);
  CHECK(downs == 2);

  CHECK(robustdtw::inject_noise(base, NoiseKind::both, 5, 10.0, 9).values ==
        robustdtw::inject_noise(base, NoiseKind::both, 5, 10.0, 9).values);
  CHECK_THROWS_AS(robustdtw::inject_noise(base, NoiseKind::both, 16, 10.0, 9),
                  std::invalid_argument);
  CHECK_THROWS_AS(robustdtw::inject_noise(base, NoiseKind::both, -1, 10.0, 9),
                  std::invalid_argument);
}

TEST_CASE("noise kind names round-trip") {
  for (const auto kind : {NoiseKind::spikes, NoiseKind::dips, NoiseKind::both}) {
    CHECK(robustdtw::parse_noise_kind(robustdtw::noise_kind_name(kind)) == kind);
  }
  CHECK_THROWS_AS(robustdtw::parse_noise_kind("bursts"), std::invalid_argument);
}

TEST_CASE("ranking probability handles ties and rejects degenerate labels") {
  CHECK(robustdtw::auc_score({3, 1, 2}, {true, false, false}) == 1.0);
  CHECK(robustdtw::auc_score({1, 3, 2}, {true, false, false}) == 0.0);
  CHECK(robustdtw::auc_score({2, 2, 2, 2}, {true, true, false, false}) == 0.5);
  CHECK(robustdtw::auc_score({1, 1}, {true, false}) == 0.5);
  CHECK(robustdtw::auc_score({2, 2, 1}, {true, false, false}) == 0.75);

  std::vector<double> scores{0.3, 2.0, 1.1, 0.2, 0.9};
  const std::vector<bool> truth{false, true, true, false, false};
  const double base = robustdtw::auc_score(scores, truth);
  for (double& s : scores) s = std::exp(s);
  CHECK(robustdtw::auc_score(scores, truth) == base);

  CHECK_THROWS_AS(robustdtw::auc_score({1, 2}, {true, true}), std::invalid_argument);
  CHECK_THROWS_AS(robustdtw::auc_score({1, 2}, {false, false}), std::invalid_argument);
  CHECK_THROWS_AS(robustdtw::auc_score({1, 2, 3}, {true, false}), std::invalid_argument);
}

TEST_CASE("identical series produce flat scores and a deterministic label") {
  const std::vector<TimeSeries> series(50, unit_sine(12, 48, 0.1));
  LofConfig lof;
  lof.k_neighbors = 10;
  const LofResult r = robustdtw::detect_outliers(series, {}, lof);
  REQUIRE(r.scores.size() == 50);
  for (double s : r.scores) CHECK(s == 1.0);
  CHECK(std::count(r.labels.begin(), r.labels.end(), true) == 1);
  CHECK(r.labels[0]);
}

TEST_CASE("a structural outlier tops the scores, spiked or not") {
  const robustdtw::OutlierCorpus corpus = robustdtw::make_outlier_corpus(49, 1, 48, 7);
  REQUIRE(corpus.series.size() == 50);
  REQUIRE(corpus.truth[49]);
  LofConfig lof;
  lof.k_neighbors = 10;

  const LofResult clean = robustdtw::detect_outliers(corpus.series, {}, lof);
  const std::size_t clean_top =
      std::max_element(clean.scores.begin(), clean.scores.end()) - clean.scores.begin();
  CHECK(clean_top == 49);
  CHECK(clean.labels[49]);

  // Spiking one normal must not displace the structural outlier from the top.
  std::vector<TimeSeries> spiked = corpus.series;
  spiked[3] = robustdtw::inject_noise(spiked[3], NoiseKind::spikes, 5, 10.0, 99);
  const LofResult noisy = robustdtw::detect_outliers(spiked, {}, lof);
  const std::size_t noisy_top =
      std::max_element(noisy.scores.begin(), noisy.scores.end()) - noisy.scores.begin();
  CHECK(noisy_top == 49);
  CHECK(noisy_top != 3);
}

}  // TEST_SUITE
