#include "desolve/newton.hpp"

#include <cmath>
#include <limits>

#include "desolve/error.hpp"
#include "desolve/linear_solve.hpp"

namespace desolve {

NewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian,
                          const Eigen::VectorXd& x0, const NewtonOptions& options) {
  if (!(options.eps > 0.0) || options.max_iter < 0) {
    fail(ErrorCode::invalid_argument, "newton: eps must be positive and max_iter nonnegative");
  }
  NewtonResult out;
  out.x = x0;
  Eigen::VectorXd l = residual(out.x);
  double norm = l.norm();
  out.report.residual_history.push_back(norm);

  while (norm >= options.eps && out.report.iterations < options.max_iter) {
    const Eigen::MatrixXd j = jacobian(out.x);
    if (j.rows() != l.size() || j.cols() != out.x.size()) {
      fail(ErrorCode::invalid_argument, "newton: jacobian has inconsistent dimensions");
    }
    if (!j.allFinite() || !l.allFinite()) {
      fail(ErrorCode::singular_jacobian, "newton: non-finite jacobian or residual");
    }
    const LeastSquaresResult step = least_squares(j, l);
    if (step.rank == 0) {
      fail(ErrorCode::singular_jacobian, "newton: jacobian is zero to working precision");
    }
    Eigen::VectorXd candidate = out.x - step.solution;
    Eigen::VectorXd l_next = residual(candidate);
    const double next_norm = l_next.norm();
    if (!std::isfinite(next_norm) || next_norm >= norm) break;
    out.x = std::move(candidate);
    l = std::move(l_next);
    norm = next_norm;
    ++out.report.iterations;
    out.report.residual_history.push_back(norm);
  }
  out.report.residual_norm = norm;
  out.report.converged = norm < options.eps;
  return out;
}

SquareNewtonResult newton_solve_square(const ResidualFn& residual, const JacobianFn& jacobian,
                                       const Eigen::VectorXd& x0,
                                       const SquareNewtonOptions& options) {
  const Eigen::Index n = x0.size();
  const Eigen::Index mb = options.monitor_begin;
  const Eigen::Index ms = options.monitor_size < 0 ? n - mb : options.monitor_size;
  if (mb < 0 || ms < 1 || mb + ms > n) {
    fail(ErrorCode::invalid_argument, "newton: monitored block out of range");
  }

  SquareNewtonResult out;
  Eigen::VectorXd x = x0;
  Eigen::VectorXd f = residual(x);
  if (f.size() != n) fail(ErrorCode::invalid_argument, "newton: residual size mismatch");
  double norm = f.norm();
  const double initial_norm = norm;
  out.x = x;
  out.report.residual_norm = norm;
  out.report.residual_history.push_back(norm);

  double best = norm;
  int stalled = 0;
  for (int k = 0; k < options.max_iter; ++k) {
    if (norm == 0.0) {
      out.report.converged = true;
      break;
    }
    const SquareSolveResult step = solve_square(jacobian(x), f);
    out.condition_estimate = step.condition_estimate;
    x -= step.solution;
    f = residual(x);
    norm = f.norm();
    if (!std::isfinite(norm)) break;
    out.report.iterations = k + 1;
    out.report.residual_history.push_back(norm);

    if (norm < best) {
      stalled = norm < 0.5 * best ? 0 : stalled + 1;
      best = norm;
      out.x = x;
      out.report.residual_norm = norm;
    } else {
      ++stalled;
    }

    const double dx = step.solution.segment(mb, ms).lpNorm<Eigen::Infinity>();
    const double xs = x.segment(mb, ms).lpNorm<Eigen::Infinity>();
    if (dx <= options.step_tol * (1.0 + xs)) {
      out.report.converged = true;
      break;
    }
    if (stalled >= 3 && best <= 1e-6 * initial_norm) {
      out.report.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace desolve
