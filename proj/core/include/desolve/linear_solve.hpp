#pragma once

#include <Eigen/Dense>

namespace desolve {

struct LeastSquaresResult {
  Eigen::VectorXd solution;
  Eigen::Index rank = 0;
  /// Ratio of the largest to the smallest retained pivot of the orthogonal
  /// factorization; a cheap lower bound on cond_2 of the retained block.
  double condition_estimate = 0.0;
};

/// Minimum-norm minimizer of ||A x - b||_2 via a complete orthogonal
/// decomposition. Pivots below max(p, q) * eps * |largest pivot| are treated
/// as zero.
LeastSquaresResult least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

inline Eigen::VectorXd solve_least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  return least_squares(a, b).solution;
}

struct SquareSolveResult {
  Eigen::VectorXd solution;
  /// 1 / rcond of the full-pivot LU factorization (infinity-norm estimate).
  double condition_estimate = 0.0;
};

enum class SquareMethod {
  full_pivot_lu,
  /// Full-pivot Householder QR; pivots below n * eps of the largest are
  /// dropped, giving a basic solution on numerically rank-deficient systems.
  full_pivot_qr,
};

/// Dense solve of a square system. Throws NumericError (with the condition
/// estimate) when an LU pivot is exactly zero or the result is not finite.
SquareSolveResult solve_square(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                               SquareMethod method = SquareMethod::full_pivot_lu);

}  // namespace desolve
