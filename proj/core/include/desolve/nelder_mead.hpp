#pragma once

#include <Eigen/Dense>
#include <functional>

namespace desolve {

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;

struct SimplexResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int evaluations = 0;
};

/// Downhill simplex (reflection 1, expansion 2, contraction 0.5, shrink 0.5).
/// The start simplex perturbs each coordinate of x0 by 5% (0.00025 for zero
/// entries). Stops when the simplex diameter drops below tol or after
/// max_evals objective evaluations. Non-finite objective values are ranked as
/// +infinity.
SimplexResult nelder_mead_minimize(const ObjectiveFn& objective, const Eigen::VectorXd& x0,
                                   double tol = 1e-8, int max_evals = 400);

}  // namespace desolve
