#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "desolve/grid.hpp"
#include "desolve/newton.hpp"
#include "desolve/problems.hpp"
#include "desolve/report.hpp"

namespace desolve {

enum class IvpKind { first_order, second_order };

/// weight * g^(order)(t): one term of a constrained expression that depends on
/// the free function.
struct Anchor1D {
  double weight = 0.0;
  double t = 0.0;
  int order = 0;
};

/// Free function callable as g(t, k) = d^k g / dt^k.
using FreeFunction1D = std::function<double(double, int)>;

/// y(t) = g(t) + (y0 - g(t0))                              (first order)
/// y(t) = g(t) + (y0 - g(t0)) + (t - t0)(ydot0 - g'(t0))   (second order)
/// Derivatives are analytic in t. anchors() lists the g-dependent terms and
/// particular() the rest, so y^(k)(t) = particular(t, k) + sum w g^(o)(s).
class ConstrainedExpression1D {
 public:
  ConstrainedExpression1D(IvpKind kind, double t0, double y0, double ydot0);

  IvpKind kind() const { return kind_; }
  int order() const { return kind_ == IvpKind::first_order ? 1 : 2; }
  double t0() const { return t0_; }
  double y0() const { return y0_; }
  double ydot0() const { return ydot0_; }

  std::vector<Anchor1D> anchors(double t, int deriv) const;
  double particular(double t, int deriv) const;
  double evaluate(const FreeFunction1D& g, double t, int deriv = 0) const;

 private:
  IvpKind kind_;
  double t0_;
  double y0_;
  double ydot0_;
};

ConstrainedExpression1D build_ivp_expression(double t0, double y0,
                                             std::optional<double> ydot0 = std::nullopt);

enum class Part2D { value, xx, yy };

struct Anchor2D {
  double weight = 0.0;
  Point2 point;
  int order_x = 0;
  int order_y = 0;
};

/// Free function callable as g(x, y, kx, ky).
using FreeFunction2D = std::function<double(double, double, int, int)>;

/// Dirichlet constrained expression on the unit square:
/// z = C[c](x, y) + g(x, y) - C[g](x, y), with C the transfinite (Coons)
/// interpolant of the four edge functions.
class ConstrainedExpression2D {
 public:
  explicit ConstrainedExpression2D(DirichletBoundary boundary);

  const DirichletBoundary& boundary() const { return boundary_; }
  /// Largest disagreement of the edge functions at the four corners.
  double corner_mismatch() const { return corner_mismatch_; }

  std::vector<Anchor2D> anchors(Point2 p, Part2D part) const;
  double particular(Point2 p, Part2D part) const;
  double evaluate(const FreeFunction2D& g, Point2 p, Part2D part = Part2D::value) const;

 private:
  DirichletBoundary boundary_;
  double corner_mismatch_ = 0.0;
};

/// Corner disagreement above 1e-6 raises invalid-constraints.
ConstrainedExpression2D build_dirichlet_expression(DirichletBoundary boundary);

/// Chebyshev-expansion free function bound to its constrained expression.
class TfcSolution {
 public:
  TfcSolution(ConstrainedExpression1D expression, Interval domain, int m, Eigen::VectorXd xi);
  TfcSolution(ConstrainedExpression2D expression, int m, Eigen::VectorXd xi);

  bool two_dimensional() const { return expression_2d_.has_value(); }
  int m() const { return m_; }
  const Eigen::VectorXd& xi() const { return xi_; }
  const Interval& domain() const { return domain_; }
  const ConstrainedExpression1D& expression_1d() const;
  const ConstrainedExpression2D& expression_2d() const;

  double free_function(double t, int deriv) const;
  double free_function(double x, double y, int kx, int ky) const;

 private:
  std::optional<ConstrainedExpression1D> expression_1d_;
  std::optional<ConstrainedExpression2D> expression_2d_;
  Interval domain_;
  int m_;
  Eigen::VectorXd xi_;
};

/// Total-degree product basis T_a(2x-1) T_b(2y-1), a + b <= m - 1.
std::vector<std::pair<int, int>> tfc_basis_2d(int m);

/// Value (or derivative) of the solution. Points outside the closed domain
/// raise domain-error unless allow_extrapolation is set.
double evaluate_tfc(const TfcSolution& sol, double t, int deriv = 0,
                    bool allow_extrapolation = false);
double evaluate_tfc(const TfcSolution& sol, Point2 p, Part2D part = Part2D::value,
                    bool allow_extrapolation = false);

/// Euclidean norm of the differential-equation residual of a solution at the
/// given points; used to score m.
double tfc_residual_norm(const TfcSolution& sol, const BenchmarkProblem& problem,
                         std::span<const double> points);
double tfc_residual_norm(const TfcSolution& sol, const BenchmarkProblem& problem,
                         std::span<const Point2> points);

struct TfcResult {
  TfcSolution solution;
  ErrorReport report;
  ConvergenceReport newton;
};

/// test_points = 0 selects the default test set (1000 points, or 33 x 33).
TfcResult solve_linear_ode_tfc(const BenchmarkProblem& problem, int n, int m,
                               int test_points = 0);
TfcResult solve_nonlinear_ode_tfc(const BenchmarkProblem& problem, int n, int m,
                                  const NewtonOptions& options = {}, int test_points = 0);
TfcResult solve_linear_pde_tfc(const BenchmarkProblem& problem, int n_interior, int m,
                               int test_points = 0);

/// Collocation points used by the PDE solver (Chebyshev tensor grid).
std::vector<Point2> tfc_pde_points(int n_interior);

}  // namespace desolve
