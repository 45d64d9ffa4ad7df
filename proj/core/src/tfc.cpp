#include "desolve/tfc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "desolve/chebyshev.hpp"
#include "desolve/error.hpp"
#include "desolve/linear_solve.hpp"
#include "solver_common.hpp"

namespace desolve {

namespace {

constexpr double kDomainSlack = 1e-12;

void check_deriv(int deriv, int max) {
  if (deriv < 0 || deriv > max) {
    fail(ErrorCode::unsupported_order, "derivative order " + std::to_string(deriv) +
                                           " not available (max " + std::to_string(max) + ")");
  }
}

/// Row of d^k/dt^k T_j(x(t)) for the free function on [t0, tf].
Eigen::RowVectorXd basis_row_1d(double t, int deriv, const Interval& d, int m) {
  const double c = 2.0 / (d.tf - d.t0);
  const double x = -1.0 + c * (t - d.t0);
  return chebyshev_row(x, m, deriv) * std::pow(c, deriv);
}

Eigen::RowVectorXd basis_row_2d(Point2 p, int kx, int ky, const std::vector<std::pair<int, int>>& pairs,
                                int m) {
  const Eigen::RowVectorXd rx = chebyshev_row(2.0 * p.x - 1.0, m, kx) * std::pow(2.0, kx);
  const Eigen::RowVectorXd ry = chebyshev_row(2.0 * p.y - 1.0, m, ky) * std::pow(2.0, ky);
  Eigen::RowVectorXd row(static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    row(static_cast<Eigen::Index>(k)) = rx(pairs[k].first) * ry(pairs[k].second);
  }
  return row;
}

/// Row of the homogeneous part of y^(deriv)(t) with respect to xi.
Eigen::RowVectorXd expression_row(const ConstrainedExpression1D& e, double t, int deriv,
                                  const Interval& d, int m) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(m);
  for (const Anchor1D& a : e.anchors(t, deriv)) row += a.weight * basis_row_1d(a.t, a.order, d, m);
  return row;
}

Eigen::RowVectorXd expression_row(const ConstrainedExpression2D& e, Point2 p, Part2D part,
                                  const std::vector<std::pair<int, int>>& pairs, int m) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(pairs.size()));
  for (const Anchor2D& a : e.anchors(p, part)) {
    row += a.weight * basis_row_2d(a.point, a.order_x, a.order_y, pairs, m);
  }
  return row;
}

ConstrainedExpression1D expression_for(const BenchmarkProblem& p) {
  if (p.kind == ProblemKind::linear_ode_2nd) return build_ivp_expression(p.domain.t0, p.y0, p.ydot0);
  return build_ivp_expression(p.domain.t0, p.y0);
}

void check_m(int m, int constraints) {
  if (m < constraints + 1) {
    fail(ErrorCode::invalid_argument, "basis size m must exceed the number of constraints");
  }
}

double residual_1d(const TfcSolution& sol, const BenchmarkProblem& p, double t) {
  const double y = evaluate_tfc(sol, t, 0, true);
  const double y1 = evaluate_tfc(sol, t, 1, true);
  switch (p.kind) {
    case ProblemKind::linear_ode_1st:
      return y1 + p.a0(t) * y - p.r(t);
    case ProblemKind::linear_ode_2nd:
      return evaluate_tfc(sol, t, 2, true) + p.a1(t) * y1 + p.a0(t) * y - p.r(t);
    case ProblemKind::nonlinear_ode_1st:
      return y1 - p.f(t, y);
    case ProblemKind::linear_pde:
      break;
  }
  fail(ErrorCode::invalid_argument, "one-dimensional residual requested for a PDE");
}

ErrorReport finish_report_1d(const TfcSolution& sol, const BenchmarkProblem& problem, int n,
                             std::span<const double> train, int test_points) {
  ErrorReport r = detail::start_report(problem, "tfc", n);
  r.hp_m = sol.m();
  detail::fill_errors(
      r, problem, train,
      [&](std::span<const double> pts) {
        std::vector<double> out;
        out.reserve(pts.size());
        for (double t : pts) out.push_back(evaluate_tfc(sol, t));
        return out;
      },
      test_points);
  return r;
}

}  // namespace

ConstrainedExpression1D::ConstrainedExpression1D(IvpKind kind, double t0, double y0, double ydot0)
    : kind_(kind), t0_(t0), y0_(y0), ydot0_(ydot0) {}

std::vector<Anchor1D> ConstrainedExpression1D::anchors(double t, int deriv) const {
  check_deriv(deriv, kMaxBasisDerivative);
  std::vector<Anchor1D> out{{1.0, t, deriv}};
  if (kind_ == IvpKind::first_order) {
    if (deriv == 0) out.push_back({-1.0, t0_, 0});
  } else {
    if (deriv == 0) {
      out.push_back({-1.0, t0_, 0});
      out.push_back({-(t - t0_), t0_, 1});
    } else if (deriv == 1) {
      out.push_back({-1.0, t0_, 1});
    }
  }
  return out;
}

double ConstrainedExpression1D::particular(double t, int deriv) const {
  check_deriv(deriv, kMaxBasisDerivative);
  if (kind_ == IvpKind::first_order) return deriv == 0 ? y0_ : 0.0;
  if (deriv == 0) return y0_ + (t - t0_) * ydot0_;
  return deriv == 1 ? ydot0_ : 0.0;
}

double ConstrainedExpression1D::evaluate(const FreeFunction1D& g, double t, int deriv) const {
  double out = particular(t, deriv);
  for (const Anchor1D& a : anchors(t, deriv)) out += a.weight * g(a.t, a.order);
  return out;
}

ConstrainedExpression1D build_ivp_expression(double t0, double y0, std::optional<double> ydot0) {
  if (!std::isfinite(t0) || !std::isfinite(y0) || (ydot0 && !std::isfinite(*ydot0))) {
    fail(ErrorCode::invalid_argument, "initial data must be finite");
  }
  if (ydot0) return ConstrainedExpression1D(IvpKind::second_order, t0, y0, *ydot0);
  return ConstrainedExpression1D(IvpKind::first_order, t0, y0, 0.0);
}

ConstrainedExpression2D::ConstrainedExpression2D(DirichletBoundary b) : boundary_(std::move(b)) {
  const DirichletBoundary& c = boundary_;
  if (!c.c1 || !c.c2 || !c.c3 || !c.c4 || !c.c1_dd || !c.c2_dd || !c.c3_dd || !c.c4_dd) {
    fail(ErrorCode::invalid_constraints, "all four edge functions and their second derivatives are required");
  }
  corner_mismatch_ = std::max({std::abs(c.c1(0.0) - c.c2(0.0)), std::abs(c.c3(0.0) - c.c2(1.0)),
                               std::abs(c.c1(1.0) - c.c4(0.0)), std::abs(c.c3(1.0) - c.c4(1.0))});
}

std::vector<Anchor2D> ConstrainedExpression2D::anchors(Point2 p, Part2D part) const {
  const double x = p.x;
  const double y = p.y;
  switch (part) {
    case Part2D::value:
      return {{1.0, {x, y}, 0, 0},
              {-(1.0 - y), {x, 0.0}, 0, 0},
              {-y, {x, 1.0}, 0, 0},
              {-(1.0 - x), {0.0, y}, 0, 0},
              {-x, {1.0, y}, 0, 0},
              {(1.0 - x) * (1.0 - y), {0.0, 0.0}, 0, 0},
              {(1.0 - x) * y, {0.0, 1.0}, 0, 0},
              {x * (1.0 - y), {1.0, 0.0}, 0, 0},
              {x * y, {1.0, 1.0}, 0, 0}};
    case Part2D::xx:
      return {{1.0, {x, y}, 2, 0}, {-(1.0 - y), {x, 0.0}, 2, 0}, {-y, {x, 1.0}, 2, 0}};
    case Part2D::yy:
      return {{1.0, {x, y}, 0, 2}, {-(1.0 - x), {0.0, y}, 0, 2}, {-x, {1.0, y}, 0, 2}};
  }
  return {};
}

double ConstrainedExpression2D::particular(Point2 p, Part2D part) const {
  const DirichletBoundary& c = boundary_;
  const double x = p.x;
  const double y = p.y;
  switch (part) {
    case Part2D::value:
      return (1.0 - y) * c.c1(x) + y * c.c3(x) + (1.0 - x) * c.c2(y) + x * c.c4(y) -
             ((1.0 - x) * (1.0 - y) * c.c1(0.0) + (1.0 - x) * y * c.c3(0.0) +
              x * (1.0 - y) * c.c1(1.0) + x * y * c.c3(1.0));
    case Part2D::xx:
      return (1.0 - y) * c.c1_dd(x) + y * c.c3_dd(x);
    case Part2D::yy:
      return (1.0 - x) * c.c2_dd(y) + x * c.c4_dd(y);
  }
  return 0.0;
}

double ConstrainedExpression2D::evaluate(const FreeFunction2D& g, Point2 p, Part2D part) const {
  double out = particular(p, part);
  for (const Anchor2D& a : anchors(p, part)) {
    out += a.weight * g(a.point.x, a.point.y, a.order_x, a.order_y);
  }
  return out;
}

ConstrainedExpression2D build_dirichlet_expression(DirichletBoundary boundary) {
  ConstrainedExpression2D e(std::move(boundary));
  if (e.corner_mismatch() > 1e-6) {
    fail(ErrorCode::invalid_constraints, "edge functions disagree at a corner");
  }
  return e;
}

TfcSolution::TfcSolution(ConstrainedExpression1D expression, Interval domain, int m,
                         Eigen::VectorXd xi)
    : expression_1d_(std::move(expression)), domain_(domain), m_(m), xi_(std::move(xi)) {
  if (xi_.size() != m_) fail(ErrorCode::invalid_argument, "coefficient vector length must equal m");
}

TfcSolution::TfcSolution(ConstrainedExpression2D expression, int m, Eigen::VectorXd xi)
    : expression_2d_(std::move(expression)), domain_{0.0, 1.0}, m_(m), xi_(std::move(xi)) {
  if (xi_.size() != static_cast<Eigen::Index>(tfc_basis_2d(m).size())) {
    fail(ErrorCode::invalid_argument, "coefficient vector length must match the 2-D basis");
  }
}

const ConstrainedExpression1D& TfcSolution::expression_1d() const {
  if (!expression_1d_) fail(ErrorCode::invalid_argument, "solution is two-dimensional");
  return *expression_1d_;
}

const ConstrainedExpression2D& TfcSolution::expression_2d() const {
  if (!expression_2d_) fail(ErrorCode::invalid_argument, "solution is one-dimensional");
  return *expression_2d_;
}

double TfcSolution::free_function(double t, int deriv) const {
  return basis_row_1d(t, deriv, domain_, m_).dot(xi_);
}

double TfcSolution::free_function(double x, double y, int kx, int ky) const {
  return basis_row_2d({x, y}, kx, ky, tfc_basis_2d(m_), m_).dot(xi_);
}

std::vector<std::pair<int, int>> tfc_basis_2d(int m) {
  if (m < 1) fail(ErrorCode::invalid_argument, "basis size m must be positive");
  std::vector<std::pair<int, int>> out;
  for (int total = 0; total < m; ++total) {
    for (int a = total; a >= 0; --a) out.emplace_back(a, total - a);
  }
  return out;
}

double evaluate_tfc(const TfcSolution& sol, double t, int deriv, bool allow_extrapolation) {
  const ConstrainedExpression1D& e = sol.expression_1d();
  const Interval& d = sol.domain();
  if (!allow_extrapolation && !(t >= d.t0 - kDomainSlack && t <= d.tf + kDomainSlack)) {
    fail(ErrorCode::domain_error, "evaluation point outside the solution domain");
  }
  check_deriv(deriv, e.order());
  return e.evaluate([&](double s, int k) { return sol.free_function(s, k); }, t, deriv);
}

double evaluate_tfc(const TfcSolution& sol, Point2 p, Part2D part, bool allow_extrapolation) {
  const ConstrainedExpression2D& e = sol.expression_2d();
  auto inside = [](double s) { return s >= -kDomainSlack && s <= 1.0 + kDomainSlack; };
  if (!allow_extrapolation && !(inside(p.x) && inside(p.y))) {
    fail(ErrorCode::domain_error, "evaluation point outside the unit square");
  }
  const auto pairs = tfc_basis_2d(sol.m());
  const Eigen::RowVectorXd row = expression_row(e, p, part, pairs, sol.m());
  return e.particular(p, part) + row.dot(sol.xi());
}

double tfc_residual_norm(const TfcSolution& sol, const BenchmarkProblem& problem,
                         std::span<const double> points) {
  double sum = 0.0;
  for (double t : points) {
    const double r = residual_1d(sol, problem, t);
    sum += r * r;
  }
  return std::sqrt(sum);
}

double tfc_residual_norm(const TfcSolution& sol, const BenchmarkProblem& problem,
                         std::span<const Point2> points) {
  if (!problem.is_pde()) fail(ErrorCode::invalid_argument, "problem is not a PDE");
  double sum = 0.0;
  for (const Point2& p : points) {
    const double r = evaluate_tfc(sol, p, Part2D::xx, true) + evaluate_tfc(sol, p, Part2D::yy, true) -
                     problem.source(p.x, p.y);
    sum += r * r;
  }
  return std::sqrt(sum);
}

TfcResult solve_linear_ode_tfc(const BenchmarkProblem& problem, int n, int m, int test_points) {
  if (!problem.is_linear() || problem.is_pde()) {
    fail(ErrorCode::invalid_argument, "linear TFC solver needs a linear ODE");
  }
  const ConstrainedExpression1D expr = expression_for(problem);
  check_m(m, expr.order());
  detail::Stopwatch clock;
  const CollocationGrid grid = make_collocation_grid(n, problem.domain.t0, problem.domain.tf);
  const auto rows = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd a(rows, m);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double t = grid.t_points[static_cast<std::size_t>(i)];
    const int order = expr.order();
    const double coef[3] = {problem.a0(t), order == 2 ? problem.a1(t) : 1.0, 1.0};
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(m);
    double rhs = problem.r(t);
    for (int k = 0; k <= order; ++k) {
      row += coef[k] * expression_row(expr, t, k, problem.domain, m);
      rhs -= coef[k] * expr.particular(t, k);
    }
    a.row(i) = row;
    b(i) = rhs;
  }
  const LeastSquaresResult ls = least_squares(a, b);
  if (!ls.solution.allFinite()) fail(ErrorCode::numeric_error, "TFC least squares produced non-finite coefficients");
  TfcSolution sol(expr, problem.domain, m, ls.solution);
  const double elapsed = clock.seconds();

  ErrorReport r = finish_report_1d(sol, problem, n, grid.t_points, test_points);
  r.train_time_s = elapsed;
  r.condition_estimate = ls.condition_estimate;
  return {std::move(sol), std::move(r), {}};
}

TfcResult solve_nonlinear_ode_tfc(const BenchmarkProblem& problem, int n, int m,
                                  const NewtonOptions& options, int test_points) {
  if (problem.kind != ProblemKind::nonlinear_ode_1st) {
    fail(ErrorCode::invalid_argument, "nonlinear TFC solver needs y' = f(t, y)");
  }
  if (!problem.f || !problem.f_y) fail(ErrorCode::invalid_argument, "problem must provide f and f_y");
  const ConstrainedExpression1D expr = expression_for(problem);
  check_m(m, 1);
  detail::Stopwatch clock;
  const CollocationGrid grid = make_collocation_grid(n, problem.domain.t0, problem.domain.tf);
  const auto rows = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd h0(rows, m);
  Eigen::MatrixXd h1(rows, m);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double t = grid.t_points[static_cast<std::size_t>(i)];
    h0.row(i) = expression_row(expr, t, 0, problem.domain, m);
    h1.row(i) = expression_row(expr, t, 1, problem.domain, m);
  }
  const Eigen::Map<const Eigen::VectorXd> t(grid.t_points.data(), rows);
  const double y0 = expr.y0();

  auto residual = [&](const Eigen::VectorXd& xi) {
    const Eigen::VectorXd y = (h0 * xi).array() + y0;
    const Eigen::VectorXd yd = h1 * xi;
    Eigen::VectorXd l(rows);
    for (Eigen::Index i = 0; i < rows; ++i) l(i) = yd(i) - problem.f(t(i), y(i));
    return l;
  };
  auto jacobian = [&](const Eigen::VectorXd& xi) {
    const Eigen::VectorXd y = (h0 * xi).array() + y0;
    Eigen::MatrixXd j = h1;
    for (Eigen::Index i = 0; i < rows; ++i) j.row(i) -= problem.f_y(t(i), y(i)) * h0.row(i);
    return j;
  };

  const std::vector<double> heun = detail::heun_trajectory(problem, grid.t_points);
  Eigen::VectorXd target(rows);
  for (Eigen::Index i = 0; i < rows; ++i) target(i) = heun[static_cast<std::size_t>(i)] - y0;
  Eigen::VectorXd xi0 = Eigen::VectorXd::Zero(m);
  if (target.allFinite()) {
    xi0 = solve_least_squares(h0, target);
    if (!xi0.allFinite()) xi0.setZero();
  }

  const NewtonResult newton = newton_solve(residual, jacobian, xi0, options);
  TfcSolution sol(expr, problem.domain, m, newton.x);
  const double elapsed = clock.seconds();

  ErrorReport r = finish_report_1d(sol, problem, n, grid.t_points, test_points);
  r.train_time_s = elapsed;
  r.converged = newton.report.converged;
  r.iterations = newton.report.iterations;
  return {std::move(sol), std::move(r), newton.report};
}

std::vector<Point2> tfc_pde_points(int n_interior) {
  const int side = square_grid_side(n_interior);
  return tensor_grid(make_collocation_grid(side - 1, 0.0, 1.0).t_points);
}

TfcResult solve_linear_pde_tfc(const BenchmarkProblem& problem, int n_interior, int m,
                               int test_points) {
  if (!problem.is_pde()) fail(ErrorCode::invalid_argument, "PDE TFC solver needs a Poisson problem");
  check_m(m, 0);
  const ConstrainedExpression2D expr = build_dirichlet_expression(problem.boundary);
  detail::Stopwatch clock;
  const std::vector<Point2> pts = tfc_pde_points(n_interior);
  const auto pairs = tfc_basis_2d(m);
  const auto rows = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd a(rows, static_cast<Eigen::Index>(pairs.size()));
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Point2 p = pts[static_cast<std::size_t>(i)];
    a.row(i) = expression_row(expr, p, Part2D::xx, pairs, m) + expression_row(expr, p, Part2D::yy, pairs, m);
    b(i) = problem.source(p.x, p.y) - expr.particular(p, Part2D::xx) - expr.particular(p, Part2D::yy);
  }
  const LeastSquaresResult ls = least_squares(a, b);
  if (!ls.solution.allFinite()) fail(ErrorCode::numeric_error, "TFC least squares produced non-finite coefficients");
  TfcSolution sol(expr, m, ls.solution);
  const double elapsed = clock.seconds();

  ErrorReport r = detail::start_report(problem, "tfc", n_interior);
  r.hp_m = m;
  r.train_time_s = elapsed;
  r.condition_estimate = ls.condition_estimate;
  detail::fill_errors(
      r, problem, pts,
      [&](std::span<const Point2> q) {
        std::vector<double> out;
        out.reserve(q.size());
        for (const Point2& p : q) out.push_back(evaluate_tfc(sol, p));
        return out;
      },
      test_points);
  return {std::move(sol), std::move(r), {}};
}

}  // namespace desolve
