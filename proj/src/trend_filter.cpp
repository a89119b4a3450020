#include "robustdtw/trend_filter.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <stdexcept>

namespace robustdtw {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

// prox of t * huber_gamma at v.
double huber_prox(double v, double gamma, double t) {
  if (std::fabs(v) <= gamma * (1.0 + t)) return v / (1.0 + t);
  return v - t * gamma * (v > 0.0 ? 1.0 : -1.0);
}

void validate_config(const SolverConfig& config) {
  if (config.rho <= 0.0) throw std::invalid_argument("solver rho must be positive");
  if (config.huber_gamma <= 0.0) throw std::invalid_argument("huber gamma must be positive");
  if (config.eps_abs <= 0.0 || config.eps_rel <= 0.0) {
    throw std::invalid_argument("solver tolerances must be positive");
  }
  if (config.max_iter < 1) throw std::invalid_argument("solver max_iter must be at least 1");
  if (config.lambda1 < 0.0 || config.lambda2 < 0.0) {
    throw std::invalid_argument("penalty weights must be non-negative");
  }
}

// Stack the penalty rows with each lambda folded into its coefficients.
SpMat stack_penalties(const std::vector<PenaltyTerm>& penalties, int n, int* total_rows) {
  std::vector<Eigen::Triplet<double>> entries;
  int row = 0;
  for (const auto& term : penalties) {
    if (term.lambda < 0.0) throw std::invalid_argument("penalty lambda must be non-negative");
    if (term.cols != n) {
      throw std::invalid_argument("penalty matrix has " + std::to_string(term.cols) +
                                  " columns, target has " + std::to_string(n));
    }
    if (term.lambda == 0.0) continue;
    for (const auto& sparse_row : term.rows) {
      for (const auto& [col, coeff] : sparse_row) {
        if (col < 0 || col >= n) throw std::invalid_argument("penalty column out of range");
        entries.emplace_back(row, col, term.lambda * coeff);
      }
      ++row;
    }
  }
  *total_rows = row;
  SpMat d(row, n);
  d.setFromTriplets(entries.begin(), entries.end());
  return d;
}

}  // namespace

double soft_threshold(double value, double threshold) {
  if (value > threshold) return value - threshold;
  if (value < -threshold) return value + threshold;
  return 0.0;
}

std::vector<double> DifferenceOperator::apply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != cols) {
    throw std::invalid_argument("difference operator expects length " + std::to_string(cols));
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

DifferenceOperator difference_operator(int order, int n) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("difference operator order must be 1 or 2");
  }
  if (n <= order) {
    throw std::invalid_argument("difference operator of order " + std::to_string(order) +
                                " needs more than " + std::to_string(order) + " samples");
  }
  DifferenceOperator op;
  op.order = order;
  op.cols = n;
  op.rows.reserve(n - order);
  for (int i = 0; i + order < n; ++i) {
    if (order == 1) {
      op.rows.push_back({{i, 1.0}, {i + 1, -1.0}});
    } else {
      op.rows.push_back({{i, 1.0}, {i + 1, -2.0}, {i + 2, 1.0}});
    }
  }
  return op;
}

double huber_value(double x, double gamma) {
  if (gamma <= 0.0) throw std::invalid_argument("huber gamma must be positive");
  const double a = std::fabs(x);
  if (a <= gamma) return 0.5 * x * x;
  return gamma * a - 0.5 * gamma * gamma;
}

PenaltyTerm penalty_term(const DifferenceOperator& op, double lambda) {
  return PenaltyTerm{op.rows, op.cols, lambda};
}

double penalized_objective(const std::vector<double>& target, Fidelity fidelity,
                           const std::vector<PenaltyTerm>& penalties, double huber_gamma,
                           const std::vector<double>& x) {
  if (x.size() != target.size()) throw std::invalid_argument("objective size mismatch");
  double value = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = target[i] - x[i];
    value += fidelity == Fidelity::huber ? huber_value(r, huber_gamma) : 0.5 * r * r;
  }
  for (const auto& term : penalties) {
    if (term.lambda == 0.0) continue;
    for (const auto& row : term.rows) {
      double acc = 0.0;
      for (const auto& [col, coeff] : row) acc += coeff * x[col];
      value += term.lambda * std::fabs(acc);
    }
  }
  return value;
}

AdmmResult generalized_lasso_admm(const std::vector<double>& target, Fidelity fidelity,
                                  const std::vector<PenaltyTerm>& penalties,
                                  const SolverConfig& config) {
  validate_config(config);
  const int n = static_cast<int>(target.size());
  if (n == 0) throw std::invalid_argument("solver target must be non-empty");

  int rows = 0;
  const SpMat d = stack_penalties(penalties, n, &rows);
  const Vec y = Eigen::Map<const Vec>(target.data(), n);

  AdmmResult result;
  if (rows == 0) {
    // Pure fidelity: both losses are minimized by x = target.
    result.solution = target;
    result.converged = true;
    return result;
  }

  const double rho = config.rho;
  const bool huber = fidelity == Fidelity::huber;

  SpMat system = SpMat(d.transpose()) * d;
  if (!huber) system = system * rho;
  SpMat identity(n, n);
  identity.setIdentity();
  system = SpMat(identity + system);
  Eigen::SimplicialLLT<SpMat> solver;
  solver.compute(system);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("sparse Cholesky factorization failed");
  }

  Vec x = y;
  Vec z = d * x;
  Vec w = Vec::Zero(rows);   // scaled dual of z = Dx
  Vec e = Vec::Zero(n);      // Huber split: e = target - x
  Vec p = Vec::Zero(n);      // scaled dual of x + e = target
  const double sqrt_rows = std::sqrt(static_cast<double>(rows));
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  for (int iter = 1; iter <= config.max_iter; ++iter) {
    Vec rhs = d.transpose() * (z - w);
    if (huber) {
      rhs += y - e - p;
    } else {
      rhs = rho * rhs + y;
    }
    x = solver.solve(rhs);
    const Vec dx = d * x;

    Vec z_new(rows);
    for (int i = 0; i < rows; ++i) z_new[i] = soft_threshold(dx[i] + w[i], 1.0 / rho);

    double r_norm, s_norm, eps_pri, eps_dual;
    if (huber) {
      Vec e_new(n);
      for (int i = 0; i < n; ++i) {
        e_new[i] = huber_prox(y[i] - x[i] - p[i], config.huber_gamma, 1.0 / rho);
      }
      const Vec fid_residual = x + e_new - y;
      const Vec pen_residual = dx - z_new;
      p += fid_residual;
      w += pen_residual;
      const Vec dual_change = (e_new - e) - d.transpose() * (z_new - z);
      e = e_new;
      z = z_new;
      r_norm = std::sqrt(fid_residual.squaredNorm() + pen_residual.squaredNorm());
      s_norm = rho * dual_change.norm();
      const double ax = std::sqrt(x.squaredNorm() + dx.squaredNorm());
      const double bz = std::sqrt(e.squaredNorm() + z.squaredNorm());
      eps_pri = std::sqrt(static_cast<double>(n + rows)) * config.eps_abs +
                config.eps_rel * std::max({ax, bz, y.norm()});
      eps_dual = sqrt_n * config.eps_abs + config.eps_rel * rho * (p + d.transpose() * w).norm();
    } else {
      const Vec pen_residual = dx - z_new;
      w += pen_residual;
      const Vec dual_change = d.transpose() * (z_new - z);
      z = z_new;
      r_norm = pen_residual.norm();
      s_norm = rho * dual_change.norm();
      eps_pri = sqrt_rows * config.eps_abs + config.eps_rel * std::max(dx.norm(), z.norm());
      eps_dual = sqrt_n * config.eps_abs + config.eps_rel * rho * (d.transpose() * w).norm();
    }

    result.iterations = iter;
    if (r_norm <= eps_pri && s_norm <= eps_dual) {
      result.converged = true;
      break;
    }
  }

  result.solution.assign(x.data(), x.data() + n);
  return result;
}

TrendDecomposition robust_trend(const TimeSeries& series, const SolverConfig& config) {
  if (series.size() < 3) {
    throw std::invalid_argument("robust_trend needs at least three samples");
  }
  const int n = static_cast<int>(series.size());
  std::vector<PenaltyTerm> penalties;
  if (config.lambda1 > 0.0) {
    penalties.push_back(penalty_term(difference_operator(1, n), config.lambda1));
  }
  if (config.lambda2 > 0.0) {
    penalties.push_back(penalty_term(difference_operator(2, n), config.lambda2));
  }
  const AdmmResult fit = generalized_lasso_admm(series.values, Fidelity::huber, penalties, config);

  TrendDecomposition out;
  out.trend.name = series.name;
  out.trend.values = fit.solution;
  out.residual.name = series.name;
  out.residual.values.resize(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    out.residual.values[i] = series.values[i] - fit.solution[i];
  }
  out.converged = fit.converged;
  out.iterations = fit.iterations;
  return out;
}

}  // namespace robustdtw
