#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace desolve {

enum class ProblemId { P1, P2, P3, P4, custom };

enum class ProblemKind { linear_ode_1st, nonlinear_ode_1st, linear_ode_2nd, linear_pde };

std::string_view to_string(ProblemId id);
std::string_view to_string(ProblemKind kind);
/// Accepts "P1".."P4" (case-insensitive); throws invalid-argument otherwise.
ProblemId parse_problem_id(std::string_view text);

using ScalarFn = std::function<double(double)>;
using Scalar2Fn = std::function<double(double, double)>;

struct Interval {
  double t0 = 0.0;
  double tf = 1.0;
};

/// Dirichlet data on the unit square: c1 on y = 0, c2 on x = 0, c3 on y = 1,
/// c4 on x = 1, each with its second derivative along the edge.
struct DirichletBoundary {
  ScalarFn c1, c2, c3, c4;
  ScalarFn c1_dd, c2_dd, c3_dd, c4_dd;
};

/// Linear ODEs are stored as y^(n) + a1(t) y' + a0(t) y = r(t) (a1 only for
/// n = 2), the nonlinear ODE as y' = f(t, y), the PDE as
/// z_xx + z_yy = source(x, y) on [0, 1]^2.
struct BenchmarkProblem {
  ProblemId id = ProblemId::custom;
  ProblemKind kind = ProblemKind::linear_ode_1st;
  Interval domain;

  ScalarFn a0, a1, r;
  Scalar2Fn f, f_y, f_yy;
  double y0 = 0.0;
  double ydot0 = 0.0;

  Scalar2Fn source;
  DirichletBoundary boundary;

  ScalarFn exact_1d;
  Scalar2Fn exact_2d;

  int order() const { return kind == ProblemKind::linear_ode_2nd ? 2 : 1; }
  bool is_pde() const { return kind == ProblemKind::linear_pde; }
  bool is_linear() const { return kind != ProblemKind::nonlinear_ode_1st; }
  bool has_exact() const { return is_pde() ? bool(exact_2d) : bool(exact_1d); }
};

BenchmarkProblem make_linear_ode_problem(Interval domain, ScalarFn a0, ScalarFn r, double y0,
                                         ScalarFn exact = {});
BenchmarkProblem make_linear_ode2_problem(Interval domain, ScalarFn a1, ScalarFn a0, ScalarFn r,
                                          double y0, double ydot0, ScalarFn exact = {});
BenchmarkProblem make_nonlinear_ode_problem(Interval domain, Scalar2Fn f, Scalar2Fn f_y,
                                            Scalar2Fn f_yy, double y0, ScalarFn exact = {});
/// Checks corner consistency: mismatches above 1e-6 raise invalid-constraints.
BenchmarkProblem make_dirichlet_problem(Scalar2Fn source, DirichletBoundary boundary,
                                        Scalar2Fn exact = {});

/// Verifies that the exact solution satisfies the equation at 50 random
/// points (fourth-order finite differences, tolerance 1e-9) and the
/// constraints to 1e-12. Throws numeric-error on failure.
void self_check(const BenchmarkProblem& problem);

/// The four benchmark problems, each self-checked.
const std::vector<BenchmarkProblem>& problem_catalog();
const BenchmarkProblem& get_problem(ProblemId id);

/// Exact solution; throws domain-error outside the closed domain and
/// invalid-argument when the problem has no exact solution or the wrong
/// dimension is requested.
double analytic_solution(const BenchmarkProblem& problem, double t);
double analytic_solution(const BenchmarkProblem& problem, double x, double y);

/// Closed-form solution of y' = y^2 + t^2, y(0) = 1 as a ratio of Bessel
/// functions. The removable singularity at t = 0 is handled by a rescaled
/// form for |t| < 1e-6.
double riccati_exact(double t);

}  // namespace desolve
