#pragma once

#include <chrono>
#include <functional>
#include <span>
#include <vector>

#include "desolve/grid.hpp"
#include "desolve/problems.hpp"
#include "desolve/report.hpp"

namespace desolve::detail {

using BatchEval1D = std::function<std::vector<double>(std::span<const double>)>;
using BatchEval2D = std::function<std::vector<double>(std::span<const Point2>)>;

inline constexpr int kDefaultTestPoints1D = 1000;
inline constexpr int kDefaultTestSide2D = 33;

std::vector<double> test_points_1d(const BenchmarkProblem& problem, int count);
std::vector<Point2> test_points_2d(int count);

/// Fills the train/test error fields and the error curve. Leaves them NaN when
/// the problem has no exact solution.
void fill_errors(ErrorReport& report, const BenchmarkProblem& problem,
                 std::span<const double> train, const BatchEval1D& eval, int test_points);
void fill_errors(ErrorReport& report, const BenchmarkProblem& problem,
                 std::span<const Point2> train, const BatchEval2D& eval, int test_points);

ErrorReport start_report(const BenchmarkProblem& problem, const char* method, int n_train);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Improved-Euler trajectory of y' = f(t, y) over increasing points.
std::vector<double> heun_trajectory(const BenchmarkProblem& problem, std::span<const double> t);

}  // namespace desolve::detail
