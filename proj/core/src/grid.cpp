#include "desolve/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "desolve/error.hpp"

namespace desolve {

namespace {

void check_interval(int n, double t0, double tf) {
  if (n < 1) {
    fail(ErrorCode::invalid_argument, "grid needs at least one interval, got " + std::to_string(n));
  }
  if (!std::isfinite(t0) || !std::isfinite(tf) || !(tf > t0)) {
    fail(ErrorCode::invalid_argument, "grid interval must satisfy tf > t0");
  }
}

}  // namespace

CollocationGrid make_collocation_grid(int n_intervals, double t0, double tf) {
  check_interval(n_intervals, t0, tf);
  CollocationGrid grid;
  grid.n_intervals = n_intervals;
  grid.t0 = t0;
  grid.tf = tf;
  grid.scale_c = 2.0 / (tf - t0);

  const auto n = static_cast<std::size_t>(n_intervals);
  grid.x_points.resize(n + 1);
  grid.t_points.resize(n + 1);
  // sin form of -cos(i*pi/N): exactly antisymmetric about the midpoint and
  // exactly zero there for even N.
  for (std::size_t i = 0; i <= n; ++i) {
    const double k = 2.0 * static_cast<double>(i) - static_cast<double>(n);
    grid.x_points[i] = std::sin(std::numbers::pi * k / (2.0 * static_cast<double>(n)));
  }
  grid.x_points.front() = -1.0;
  grid.x_points.back() = 1.0;
  for (std::size_t i = 0; i <= n; ++i) {
    grid.t_points[i] = grid.to_t(grid.x_points[i]);
  }
  grid.t_points.front() = t0;
  grid.t_points.back() = tf;
  return grid;
}

std::vector<double> uniform_points(int n_intervals, double t0, double tf) {
  check_interval(n_intervals, t0, tf);
  const auto n = static_cast<std::size_t>(n_intervals);
  std::vector<double> t(n + 1);
  const double h = (tf - t0) / static_cast<double>(n_intervals);
  for (std::size_t i = 0; i <= n; ++i) {
    t[i] = t0 + h * static_cast<double>(i);
  }
  t.back() = tf;
  return t;
}

std::vector<double> midpoints(std::span<const double> points) {
  std::vector<double> mid;
  if (points.size() < 2) {
    return mid;
  }
  mid.reserve(points.size() - 1);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    mid.push_back(0.5 * (points[i] + points[i + 1]));
  }
  return mid;
}

std::vector<Point2> tensor_grid(std::span<const double> axis) {
  std::vector<Point2> out;
  out.reserve(axis.size() * axis.size());
  for (double x : axis) {
    for (double y : axis) out.push_back({x, y});
  }
  return out;
}

int square_grid_side(int n_interior) {
  if (n_interior < 1) fail(ErrorCode::invalid_argument, "need at least one interior point");
  int root = static_cast<int>(std::sqrt(static_cast<double>(n_interior)));
  while (root * root < n_interior) ++root;
  while (root > 1 && (root - 1) * (root - 1) >= n_interior) --root;
  return root + 2;
}

bool on_unit_square_boundary(Point2 p) {
  return p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0;
}

}  // namespace desolve
