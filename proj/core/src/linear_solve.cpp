#include "desolve/linear_solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "desolve/error.hpp"

namespace desolve {

namespace {

bool all_finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

}  // namespace

LeastSquaresResult least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  if (a.rows() < 1 || a.cols() < 1) {
    fail(ErrorCode::invalid_argument, "least squares needs a non-empty matrix");
  }
  if (a.rows() != b.size()) {
    fail(ErrorCode::invalid_argument, "least squares: A has " + std::to_string(a.rows()) +
                                          " rows but b has " + std::to_string(b.size()));
  }
  if (!all_finite(a) || !b.allFinite()) {
    fail(ErrorCode::numeric_error, "least squares: non-finite input");
  }

  const double eps = std::numeric_limits<double>::epsilon();
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  cod.setThreshold(static_cast<double>(std::max(a.rows(), a.cols())) * eps);
  cod.compute(a);

  LeastSquaresResult out;
  out.rank = cod.rank();
  if (out.rank == 0) {
    out.solution = Eigen::VectorXd::Zero(a.cols());
    out.condition_estimate = std::numeric_limits<double>::infinity();
    return out;
  }
  out.solution = cod.solve(b);
  const auto& qr = cod.matrixQTZ();
  out.condition_estimate = std::abs(qr(0, 0)) / std::abs(qr(out.rank - 1, out.rank - 1));
  return out;
}

SquareSolveResult solve_square(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                               SquareMethod method) {
  if (a.rows() != a.cols() || a.rows() != b.size() || a.rows() == 0) {
    fail(ErrorCode::invalid_argument, "square solve: dimension mismatch");
  }
  if (!all_finite(a) || !b.allFinite()) {
    throw NumericError("square solve: non-finite input", std::numeric_limits<double>::infinity());
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu;
  // Kernel systems reach cond ~ 1e18; keep every nonzero pivot.
  lu.setThreshold(std::numeric_limits<double>::min());
  lu.compute(a);

  SquareSolveResult out;
  const double rcond = lu.rcond();
  out.condition_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!lu.isInvertible()) {
    throw NumericError("square solve: singular matrix (zero pivot)", out.condition_estimate);
  }
  if (method == SquareMethod::full_pivot_qr) {
    out.solution = a.fullPivHouseholderQr().solve(b);
  } else {
    out.solution = lu.solve(b);
  }
  if (!out.solution.allFinite()) {
    throw NumericError("square solve: non-finite solution", out.condition_estimate);
  }
  return out;
}

}  // namespace desolve
