#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace desolve {

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

struct ConvergenceReport {
  int iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
  /// ||L||_2 of every accepted iterate, starting with the initial guess.
  std::vector<double> residual_history;
};

struct NewtonOptions {
  double eps = 1e-13;
  int max_iter = 30;
};

struct NewtonResult {
  Eigen::VectorXd x;
  ConvergenceReport report;
};

/// Gauss-Newton iteration x <- x - J^+ L(x), with J^+ the minimum-norm least
/// squares inverse. Stops once ||L||_2 < eps, after max_iter steps, or when a
/// step fails to reduce ||L||_2 (that step is discarded). Throws
/// singular-jacobian when J is non-finite or has rank zero.
NewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian,
                          const Eigen::VectorXd& x0, const NewtonOptions& options = {});

struct SquareNewtonOptions {
  /// Relative step tolerance, measured on the monitored block.
  double step_tol = 1e-12;
  int max_iter = 50;
  /// Block of the unknown vector whose step decides convergence
  /// (default: the whole vector).
  Eigen::Index monitor_begin = 0;
  Eigen::Index monitor_size = -1;
};

struct SquareNewtonResult {
  Eigen::VectorXd x;
  ConvergenceReport report;
  double condition_estimate = 0.0;
};

/// Newton iteration for square systems F(x) = 0 using full-pivot LU steps.
/// Converged when the monitored step satisfies
/// ||dx_mon||_inf <= step_tol * (1 + ||x_mon||_inf), or when the residual has
/// stopped decreasing for three consecutive steps after dropping by at least
/// six orders of magnitude. The iterate with the smallest residual is
/// returned. Singular steps raise NumericError.
SquareNewtonResult newton_solve_square(const ResidualFn& residual, const JacobianFn& jacobian,
                                       const Eigen::VectorXd& x0,
                                       const SquareNewtonOptions& options = {});

}  // namespace desolve
