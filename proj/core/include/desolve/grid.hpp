#pragma once

#include <compare>
#include <span>
#include <vector>

namespace desolve {

/// Chebyshev-Gauss-Lobatto collocation points on [t0, tf] together with the
/// affine map onto the reference interval [-1, +1].
///
/// x_points[i] = -cos(i*pi/N), i = 0..N, and t = t0 + (x + 1) / scale_c with
/// scale_c = 2 / (tf - t0). The first and last abscissae are exactly -1/+1 and
/// t0/tf respectively.
struct CollocationGrid {
  int n_intervals = 0;
  double t0 = 0.0;
  double tf = 0.0;
  double scale_c = 0.0;
  std::vector<double> t_points;
  std::vector<double> x_points;

  std::size_t size() const { return t_points.size(); }
  double to_x(double t) const { return -1.0 + scale_c * (t - t0); }
  double to_t(double x) const { return t0 + (x + 1.0) / scale_c; }
};

CollocationGrid make_collocation_grid(int n_intervals, double t0, double tf);

/// N + 1 equally spaced points t0, ..., tf (endpoints exact).
std::vector<double> uniform_points(int n_intervals, double t0, double tf);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  auto operator<=>(const Point2&) const = default;
};

/// Points (axis[i], axis[j]) with i as the outer (x) index.
std::vector<Point2> tensor_grid(std::span<const double> axis);

/// Side length ceil(sqrt(n_interior)) + 2 of the square training grid whose
/// interior holds at least n_interior points.
int square_grid_side(int n_interior);

bool on_unit_square_boundary(Point2 p);

/// Midpoints of consecutive entries of an increasing point list.
std::vector<double> midpoints(std::span<const double> points);

}  // namespace desolve
