#include "solver_common.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "desolve/error.hpp"
#include "desolve/metrics.hpp"

namespace desolve::detail {

std::vector<double> test_points_1d(const BenchmarkProblem& problem, int count) {
  const int n = count > 0 ? count : kDefaultTestPoints1D;
  if (n < 2) fail(ErrorCode::invalid_argument, "test set needs at least two points");
  return uniform_points(n - 1, problem.domain.t0, problem.domain.tf);
}

std::vector<Point2> test_points_2d(int count) {
  int side = kDefaultTestSide2D;
  if (count > 0) {
    side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count)) - 1e-9));
    if (side < 2) fail(ErrorCode::invalid_argument, "2-D test set needs at least 2 x 2 points");
  }
  const std::vector<double> axis = uniform_points(side - 1, 0.0, 1.0);
  return tensor_grid(axis);
}

ErrorReport start_report(const BenchmarkProblem& problem, const char* method, int n_train) {
  ErrorReport r;
  r.problem = std::string(to_string(problem.id));
  r.method = method;
  r.n_train = n_train;
  r.two_dimensional = problem.is_pde();
  return r;
}

namespace {

void set_missing(ErrorReport& r) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.max_err_train = r.mse_train = r.max_err_test = r.mse_test = nan;
}

}  // namespace

void fill_errors(ErrorReport& report, const BenchmarkProblem& problem,
                 std::span<const double> train, const BatchEval1D& eval, int test_points) {
  if (!problem.exact_1d) {
    set_missing(report);
    return;
  }
  auto exact = [&](std::span<const double> pts) {
    std::vector<double> out;
    out.reserve(pts.size());
    for (double t : pts) out.push_back(problem.exact_1d(t));
    return out;
  };
  const ErrorMetrics tr = error_metrics(exact(train), eval(train));
  const std::vector<double> test = test_points_1d(problem, test_points);
  const std::vector<double> truth = exact(test);
  const std::vector<double> pred = eval(test);
  const ErrorMetrics te = error_metrics(truth, pred);
  report.max_err_train = tr.max_abs_error;
  report.mse_train = tr.mse;
  report.max_err_test = te.max_abs_error;
  report.mse_test = te.mse;
  report.curve.clear();
  for (std::size_t i = 0; i < test.size(); ++i) {
    report.curve.push_back({test[i], 0.0, std::abs(truth[i] - pred[i])});
  }
}

void fill_errors(ErrorReport& report, const BenchmarkProblem& problem,
                 std::span<const Point2> train, const BatchEval2D& eval, int test_points) {
  if (!problem.exact_2d) {
    set_missing(report);
    return;
  }
  auto exact = [&](std::span<const Point2> pts) {
    std::vector<double> out;
    out.reserve(pts.size());
    for (const Point2& p : pts) out.push_back(problem.exact_2d(p.x, p.y));
    return out;
  };
  const ErrorMetrics tr = error_metrics(exact(train), eval(train));
  const std::vector<Point2> test = test_points_2d(test_points);
  const std::vector<double> truth = exact(test);
  const std::vector<double> pred = eval(test);
  const ErrorMetrics te = error_metrics(truth, pred);
  report.max_err_train = tr.max_abs_error;
  report.mse_train = tr.mse;
  report.max_err_test = te.max_abs_error;
  report.mse_test = te.mse;
  report.curve.clear();
  for (std::size_t i = 0; i < test.size(); ++i) {
    report.curve.push_back({test[i].x, test[i].y, std::abs(truth[i] - pred[i])});
  }
}

std::vector<double> heun_trajectory(const BenchmarkProblem& problem, std::span<const double> t) {
  std::vector<double> y(t.size());
  if (t.empty()) return y;
  y[0] = problem.y0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double h = t[k + 1] - t[k];
    const double k1 = problem.f(t[k], y[k]);
    const double k2 = problem.f(t[k + 1], y[k] + h * k1);
    y[k + 1] = y[k] + 0.5 * h * (k1 + k2);
  }
  return y;
}

}  // namespace desolve::detail
