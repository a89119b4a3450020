#pragma once

#include <utility>
#include <vector>

#include "robustdtw/series.hpp"

namespace robustdtw {

// One sparse matrix row as (column, coefficient) pairs, columns strictly increasing.
using SparseRow = std::vector<std::pair<int, double>>;

// Forward difference operator on a length-n chain. Order 1 has n-1 rows
// (+1, -1) at (i, i+1); order 2 has n-2 rows (+1, -2, +1) at (i, i+1, i+2).
struct DifferenceOperator {
  int order = 1;
  int cols = 0;
  std::vector<SparseRow> rows;

  std::vector<double> apply(const std::vector<double>& x) const;
};

DifferenceOperator difference_operator(int order, int n);

// Huber loss: x^2/2 inside [-gamma, gamma], gamma*|x| - gamma^2/2 outside.
double huber_value(double x, double gamma);

// S(v, k): shrink v toward zero by k, clamping to zero inside [-k, k].
double soft_threshold(double value, double threshold);

enum class Fidelity { squared, huber };

struct SolverConfig {
  double lambda1 = 1.0;
  double lambda2 = 5.0;
  double huber_gamma = 1.0;
  double rho = 1.0;
  double eps_abs = 1e-6;
  double eps_rel = 1e-4;
  int max_iter = 500;
};

// One L1 penalty lambda * ||rows * x||_1 handed to the solver.
struct PenaltyTerm {
  std::vector<SparseRow> rows;
  int cols = 0;
  double lambda = 1.0;
};

PenaltyTerm penalty_term(const DifferenceOperator& op, double lambda);

struct AdmmResult {
  std::vector<double> solution;
  bool converged = false;
  int iterations = 0;
};

// minimize fidelity(target - x) + sum_k lambda_k ||D_k x||_1 by ADMM with the
// split z = D x (and e = target - x for the Huber fidelity). Non-convergence
// at max_iter is reported through the flag, not an error.
AdmmResult generalized_lasso_admm(const std::vector<double>& target, Fidelity fidelity,
                                  const std::vector<PenaltyTerm>& penalties,
                                  const SolverConfig& config);

// Objective value of the problem above at x.
double penalized_objective(const std::vector<double>& target, Fidelity fidelity,
                           const std::vector<PenaltyTerm>& penalties, double huber_gamma,
                           const std::vector<double>& x);

struct TrendDecomposition {
  TimeSeries trend;
  TimeSeries residual;
  bool converged = true;
  int iterations = 0;
};

// Huber-fidelity trend extraction with first and second difference penalties.
TrendDecomposition robust_trend(const TimeSeries& series, const SolverConfig& config);

}  // namespace robustdtw
