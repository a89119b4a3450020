#include <cmath>
#include <stdexcept>
#include <limits>
#include <vector>

#include "doctest.h"
#include "robustdtw/rng.hpp"
#include "robustdtw/series.hpp"
#include "robustdtw/trend_filter.hpp"
#include "support/oracles.hpp"

using robustdtw::DifferenceOperator;
using robustdtw::Fidelity;
using robustdtw::PenaltyTerm;
using robustdtw::Rng;
using robustdtw::SolverConfig;
using robustdtw::TimeSeries;

namespace {

SolverConfig tight_config() {
  SolverConfig config;
  config.eps_abs = 1e-11;
  config.eps_rel = 1e-11;
  config.max_iter = 200000;
  return config;
}

std::vector<double> gaussians(std::uint64_t seed, std::size_t n, double sigma = 1.0) {
  Rng rng(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = sigma * rng.gaussian();
  return out;
}

double l2_norm(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

double total_variation(const std::vector<double>& x) {
  const DifferenceOperator d1 = robustdtw::difference_operator(1, static_cast<int>(x.size()));
  double tv = 0.0;
  for (double r : d1.apply(x)) tv += std::abs(r);
  return tv;
}

}  // namespace

TEST_SUITE("trend_filter") {

TEST_CASE("difference operators implement forward differences") {
  const DifferenceOperator d1 = robustdtw::difference_operator(1, 3);
  CHECK(d1.rows.size() == 2);
  CHECK(d1.apply({1, 2, 4}) == std::vector<double>{-1, -2});
  for (std::size_t i = 0; i < d1.rows.size(); ++i) {
    REQUIRE(d1.rows[i].size() == 2);
    CHECK(d1.rows[i][0] == std::pair<int, double>{static_cast<int>(i), 1.0});
    CHECK(d1.rows[i][1] == std::pair<int, double>{static_cast<int>(i) + 1, -1.0});
  }

  const DifferenceOperator d2 = robustdtw::difference_operator(2, 4);
  CHECK(d2.rows.size() == 2);
  CHECK(d2.apply({0, 1, 2, 3}) == std::vector<double>{0, 0});
  CHECK(robustdtw::difference_operator(2, 3).apply({1, 0, 1}) == std::vector<double>{2});

  CHECK_THROWS_AS((void)robustdtw::difference_operator(1, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)robustdtw::difference_operator(2, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)robustdtw::difference_operator(3, 10), std::invalid_argument);
}

TEST_CASE("huber value and its branches") {
  CHECK(robustdtw::huber_value(1.0, 2.0) == 0.5);
  CHECK(robustdtw::huber_value(3.0, 1.0) == 2.5);
  const double gamma = 1.7;
  CHECK(robustdtw::huber_value(gamma, gamma) == (gamma * gamma) / 2.0);
  CHECK(robustdtw::huber_value(-gamma, gamma) == (gamma * gamma) / 2.0);
}

TEST_CASE("huber derivative matches central finite differences") {
  const double gamma = 0.8;
  const double h = 3e-9;
  for (int k = 0; k <= 150; ++k) {
    for (const double sign : {1.0, -1.0}) {
      const double x = sign * gamma * static_cast<double>(k) / 50.0;
      if (std::abs(std::abs(x) - gamma) <= 1e-8) continue;
      const double expected = std::abs(x) <= gamma ? x : gamma * (x > 0 ? 1.0 : -1.0);
      const double numeric =
          (robustdtw::huber_value(x + h, gamma) - robustdtw::huber_value(x - h, gamma)) /
          (2.0 * h);
      CHECK(std::abs(numeric - expected) <= 1e-6);
    }
  }
}

TEST_CASE("soft threshold shrinks toward zero") {
  CHECK(robustdtw::soft_threshold(3.0, 1.0) == 2.0);
  CHECK(robustdtw::soft_threshold(-0.5, 1.0) == 0.0);
  CHECK(robustdtw::soft_threshold(-3.0, 1.0) == -2.0);
  CHECK(robustdtw::soft_threshold(0.0, 1.0) == 0.0);
}

TEST_CASE("robust_trend zero-penalty and null-space identities") {
  const TimeSeries noisy(gaussians(808, 37, 2.0));
  SolverConfig zero;
  zero.lambda1 = 0.0;
  zero.lambda2 = 0.0;
  const auto identity = robustdtw::robust_trend(noisy, zero);
  CHECK(identity.trend.values == noisy.values);
  CHECK(identity.converged);

  TimeSeries ramp(std::vector<double>(10));
  for (int i = 0; i < 10; ++i) ramp.values[i] = i;
  SolverConfig line = tight_config();
  line.lambda1 = 0.0;
  line.lambda2 = 5.0;
  const auto kept = robustdtw::robust_trend(ramp, line);
  for (int i = 0; i < 10; ++i) {
    CHECK(std::abs(kept.trend.values[i] - ramp.values[i]) <= 1e-6);
  }

  CHECK_THROWS_AS((void)robustdtw::robust_trend(TimeSeries({1.0, 2.0}), zero),
                  std::invalid_argument);
}

TEST_CASE("robust_trend decomposition reconstructs the input") {
  const TimeSeries noisy(gaussians(809, 64, 1.5));
  const auto decomp = robustdtw::robust_trend(noisy, SolverConfig{});
  REQUIRE(decomp.trend.size() == noisy.size());
  REQUIRE(decomp.residual.size() == noisy.size());
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    CHECK(std::abs(decomp.trend.values[i] + decomp.residual.values[i] - noisy.values[i]) <=
          1e-12);
  }
}

TEST_CASE("robust_trend spike instance matches the coordinate-descent oracle") {
  const std::vector<double> target{0, 0, 5, 0, 0, 0};
  SolverConfig config = tight_config();
  config.lambda1 = 2.0;
  config.lambda2 = 0.0;
  config.huber_gamma = 1.0;
  const auto decomp = robustdtw::robust_trend(TimeSeries(target), config);

  const std::vector<PenaltyTerm> penalties{
      robustdtw::penalty_term(robustdtw::difference_operator(1, 6), 2.0)};
  const double admm_obj = oracle::objective(target, true, 1.0, penalties, decomp.trend.values);
  const std::vector<double> best = oracle::cd_minimize(target, true, 1.0, penalties, 99);
  const double oracle_obj = oracle::objective(target, true, 1.0, penalties, best);
  CHECK(std::abs(admm_obj - oracle_obj) <= 1e-3 * std::abs(oracle_obj));
}

TEST_CASE("generalized lasso trivial minimizers") {
  const std::vector<PenaltyTerm> penalties{
      robustdtw::penalty_term(robustdtw::difference_operator(1, 5), 1.0)};
  const auto zero = robustdtw::generalized_lasso_admm(std::vector<double>(5, 0.0),
                                                      Fidelity::squared, penalties, tight_config());
  for (double v : zero.solution) CHECK(v == 0.0);

  const std::vector<PenaltyTerm> pair{
      robustdtw::penalty_term(robustdtw::difference_operator(1, 2), 1.0)};
  const auto fused = robustdtw::generalized_lasso_admm(std::vector<double>{0.0, 10.0},
                                                       Fidelity::squared, pair, tight_config());
  REQUIRE(fused.solution.size() == 2);
  CHECK(std::abs(fused.solution[0] - 1.0) <= 1e-6);
  CHECK(std::abs(fused.solution[1] - 9.0) <= 1e-6);
}

TEST_CASE("empty or zero-lambda penalties return the target exactly") {
  const std::vector<double> target = gaussians(810, 12);
  const auto bare =
      robustdtw::generalized_lasso_admm(target, Fidelity::squared, {}, SolverConfig{});
  CHECK(bare.solution == target);
  CHECK(bare.converged);
  CHECK(bare.iterations == 0);

  const std::vector<PenaltyTerm> lambda_zero{
      robustdtw::penalty_term(robustdtw::difference_operator(1, 12), 0.0)};
  const auto skipped =
      robustdtw::generalized_lasso_admm(target, Fidelity::huber, lambda_zero, SolverConfig{});
  CHECK(skipped.solution == target);
}

TEST_CASE("tiny-instance objectives stay within the oracle bound") {
  int instance = 0;
  for (const int n : {4, 5, 6, 7, 8}) {
    for (const bool huber : {false, true}) {
      ++instance;
      const std::vector<double> target = gaussians(1300 + instance, n, 3.0);
      std::vector<PenaltyTerm> penalties{
          robustdtw::penalty_term(robustdtw::difference_operator(1, n), 0.8)};
      penalties.push_back(robustdtw::penalty_term(robustdtw::difference_operator(2, n), 1.3));
      const auto result = robustdtw::generalized_lasso_admm(
          target, huber ? Fidelity::huber : Fidelity::squared, penalties, tight_config());
      const double admm_obj = oracle::objective(target, huber, 1.0, penalties, result.solution);
      const std::vector<double> best =
          oracle::cd_minimize(target, huber, 1.0, penalties, 7000 + instance);
      const double oracle_obj = oracle::objective(target, huber, 1.0, penalties, best);
      CHECK(admm_obj <= oracle_obj + 1e-6 * std::abs(oracle_obj));

      const double lib_obj = robustdtw::penalized_objective(
          target, huber ? Fidelity::huber : Fidelity::squared, penalties, 1.0, result.solution);
      CHECK(std::abs(lib_obj - admm_obj) <= 1e-9 * (1.0 + std::abs(admm_obj)));
    }
  }
}

TEST_CASE("subgradient certificate holds at returned solutions") {
  for (const int n : {6, 12, 20}) {
    for (const bool huber : {false, true}) {
      const std::vector<double> target = gaussians(1400 + n, n, 2.0);
      const std::vector<PenaltyTerm> penalties{
          robustdtw::penalty_term(robustdtw::difference_operator(1, n), 1.5),
          robustdtw::penalty_term(robustdtw::difference_operator(2, n), 0.7)};
      const auto result = robustdtw::generalized_lasso_admm(
          target, huber ? Fidelity::huber : Fidelity::squared, penalties, tight_config());
      REQUIRE(result.converged);
      const double norm = oracle::subgradient_norm(target, huber, 1.0, penalties, result.solution);
      CHECK(norm <= 1e-4 * (1.0 + l2_norm(target)));
    }
  }
}

TEST_CASE("total variation is non-increasing in lambda1") {
  const TimeSeries noisy(gaussians(811, 48, 1.0));
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 10; ++k) {
    SolverConfig config = tight_config();
    config.lambda1 = std::pow(10.0, -2.0 + 4.0 * k / 9.0);
    config.lambda2 = 0.0;
    const auto decomp = robustdtw::robust_trend(noisy, config);
    const double tv = total_variation(decomp.trend.values);
    CHECK(tv <= previous + 1e-9);
    previous = tv;
  }
}

}  // TEST_SUITE
