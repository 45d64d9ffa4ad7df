#include "desolve/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <sstream>

#include "desolve/error.hpp"
#include "desolve/special_functions.hpp"

namespace desolve {

namespace {

constexpr double kDomainSlack = 1e-12;

double d1(const ScalarFn& y, double t, double h) {
  return (-y(t + 2 * h) + 8 * y(t + h) - 8 * y(t - h) + y(t - 2 * h)) / (12 * h);
}

double d2(const ScalarFn& y, double t, double h) {
  return (-y(t + 2 * h) + 16 * y(t + h) - 30 * y(t) + 16 * y(t - h) - y(t - 2 * h)) / (12 * h * h);
}

[[noreturn]] void self_check_failure(const std::string& what, double where, double value) {
  std::ostringstream msg;
  msg << "self-check failed: " << what << " at " << where << " (residual " << value << ")";
  fail(ErrorCode::numeric_error, msg.str());
}

BenchmarkProblem build_p1() {
  auto q = [](double t) { return (1 + 3 * t * t) / (1 + t + t * t * t); };
  auto p = make_linear_ode_problem(
      {0.0, 1.0}, [q](double t) { return t + q(t); },
      [q](double t) { return t * t * t + 2 * t + t * t * q(t); }, 1.0,
      [](double t) { return std::exp(-t * t / 2) / (1 + t + t * t * t) + t * t; });
  p.id = ProblemId::P1;
  return p;
}

BenchmarkProblem build_p2() {
  auto p = make_nonlinear_ode_problem(
      {0.0, 0.5}, [](double t, double y) { return y * y + t * t; },
      [](double, double y) { return 2 * y; }, [](double, double) { return 2.0; }, 1.0,
      riccati_exact);
  p.id = ProblemId::P2;
  return p;
}

BenchmarkProblem build_p3() {
  auto p = make_linear_ode2_problem(
      {0.0, 2.0}, [](double) { return 0.2; }, [](double) { return 1.0; },
      [](double t) { return -0.2 * std::exp(-t / 5) * std::cos(t); }, 0.0, 1.0,
      [](double t) { return std::sin(t) * std::exp(-t / 5); });
  p.id = ProblemId::P3;
  return p;
}

BenchmarkProblem build_p4() {
  DirichletBoundary b;
  b.c1 = [](double x) { return x * std::exp(-x); };
  b.c1_dd = [](double x) { return (x - 2) * std::exp(-x); };
  b.c2 = [](double y) { return y * y * y; };
  b.c2_dd = [](double y) { return 6 * y; };
  b.c3 = [](double x) { return (x + 1) * std::exp(-x); };
  b.c3_dd = [](double x) { return (x - 1) * std::exp(-x); };
  b.c4 = [](double y) { return (1 + y * y * y) * std::exp(-1.0); };
  b.c4_dd = [](double y) { return 6 * y * std::exp(-1.0); };
  auto p = make_dirichlet_problem(
      [](double x, double y) { return std::exp(-x) * (x - 2 + y * y * y + 6 * y); }, b,
      [](double x, double y) { return (x + y * y * y) * std::exp(-x); });
  p.id = ProblemId::P4;
  return p;
}

}  // namespace

std::string_view to_string(ProblemId id) {
  switch (id) {
    case ProblemId::P1: return "P1";
    case ProblemId::P2: return "P2";
    case ProblemId::P3: return "P3";
    case ProblemId::P4: return "P4";
    case ProblemId::custom: return "custom";
  }
  return "unknown";
}

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::linear_ode_1st: return "linear_ode_1st";
    case ProblemKind::nonlinear_ode_1st: return "nonlinear_ode_1st";
    case ProblemKind::linear_ode_2nd: return "linear_ode_2nd";
    case ProblemKind::linear_pde: return "linear_pde";
  }
  return "unknown";
}

ProblemId parse_problem_id(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  if (s == "P1") return ProblemId::P1;
  if (s == "P2") return ProblemId::P2;
  if (s == "P3") return ProblemId::P3;
  if (s == "P4") return ProblemId::P4;
  fail(ErrorCode::invalid_argument, "unknown problem '" + std::string(text) + "'");
}

double riccati_exact(double t) {
  const double g14 = gamma_fn(0.25);
  const double g34 = gamma_fn(0.75);
  if (std::abs(t) < 1e-6) {
    const double z = t * t / 2;
    const double num =
        -2 * g14 * bessel_series(-0.75, z) - 0.5 * g34 * t * t * t * bessel_series(0.75, z);
    const double den = g14 * (t / 2) * bessel_series(0.25, z) - 2 * g34 * bessel_series(-0.25, z);
    return num / den;
  }
  const double z = t * t / 2;
  const double num = -t * (g14 * bessel_j(-0.75, z) + 2 * g34 * bessel_j(0.75, z));
  const double den = g14 * bessel_j(0.25, z) - 2 * g34 * bessel_j(-0.25, z);
  return num / den;
}

BenchmarkProblem make_linear_ode_problem(Interval domain, ScalarFn a0, ScalarFn r, double y0,
                                         ScalarFn exact) {
  if (!(domain.tf > domain.t0)) fail(ErrorCode::invalid_argument, "empty problem domain");
  BenchmarkProblem p;
  p.kind = ProblemKind::linear_ode_1st;
  p.domain = domain;
  p.a0 = std::move(a0);
  p.a1 = [](double) { return 0.0; };
  p.r = std::move(r);
  p.y0 = y0;
  p.exact_1d = std::move(exact);
  return p;
}

BenchmarkProblem make_linear_ode2_problem(Interval domain, ScalarFn a1, ScalarFn a0, ScalarFn r,
                                          double y0, double ydot0, ScalarFn exact) {
  BenchmarkProblem p = make_linear_ode_problem(domain, std::move(a0), std::move(r), y0,
                                               std::move(exact));
  p.kind = ProblemKind::linear_ode_2nd;
  p.a1 = std::move(a1);
  p.ydot0 = ydot0;
  return p;
}

BenchmarkProblem make_nonlinear_ode_problem(Interval domain, Scalar2Fn f, Scalar2Fn f_y,
                                            Scalar2Fn f_yy, double y0, ScalarFn exact) {
  if (!(domain.tf > domain.t0)) fail(ErrorCode::invalid_argument, "empty problem domain");
  BenchmarkProblem p;
  p.kind = ProblemKind::nonlinear_ode_1st;
  p.domain = domain;
  p.f = std::move(f);
  p.f_y = std::move(f_y);
  p.f_yy = std::move(f_yy);
  p.y0 = y0;
  p.exact_1d = std::move(exact);
  return p;
}

BenchmarkProblem make_dirichlet_problem(Scalar2Fn source, DirichletBoundary b, Scalar2Fn exact) {
  const double corners[4][2] = {{b.c1(0.0), b.c2(0.0)},
                                {b.c3(0.0), b.c2(1.0)},
                                {b.c1(1.0), b.c4(0.0)},
                                {b.c3(1.0), b.c4(1.0)}};
  for (const auto& c : corners) {
    if (std::abs(c[0] - c[1]) > 1e-6) {
      fail(ErrorCode::invalid_constraints, "boundary functions disagree at a corner");
    }
  }
  BenchmarkProblem p;
  p.kind = ProblemKind::linear_pde;
  p.domain = {0.0, 1.0};
  p.source = std::move(source);
  p.boundary = std::move(b);
  p.exact_2d = std::move(exact);
  return p;
}

void self_check(const BenchmarkProblem& p) {
  if (!p.has_exact()) return;
  std::mt19937_64 rng(20200101);
  constexpr int kSamples = 50;

  if (p.is_pde()) {
    const double h = 2e-3;
    std::uniform_real_distribution<double> u(2 * h, 1 - 2 * h);
    for (int k = 0; k < kSamples; ++k) {
      const double x = u(rng);
      const double y = u(rng);
      const double zxx = d2([&](double s) { return p.exact_2d(s, y); }, x, h);
      const double zyy = d2([&](double s) { return p.exact_2d(x, s); }, y, h);
      const double res = zxx + zyy - p.source(x, y);
      if (!(std::abs(res) <= 1e-9)) self_check_failure("Poisson residual", x, res);
    }
    for (int k = 0; k <= 10; ++k) {
      const double s = k / 10.0;
      const double e[4] = {p.exact_2d(s, 0) - p.boundary.c1(s), p.exact_2d(0, s) - p.boundary.c2(s),
                           p.exact_2d(s, 1) - p.boundary.c3(s), p.exact_2d(1, s) - p.boundary.c4(s)};
      for (double v : e) {
        if (!(std::abs(v) <= 1e-12)) self_check_failure("boundary value", s, v);
      }
    }
    return;
  }

  const double t0 = p.domain.t0;
  const double tf = p.domain.tf;
  const double h = 2e-3 * (tf - t0);
  std::uniform_real_distribution<double> u(t0 + 2 * h, tf - 2 * h);
  const ScalarFn& y = p.exact_1d;
  for (int k = 0; k < kSamples; ++k) {
    const double t = u(rng);
    double res = 0.0;
    switch (p.kind) {
      case ProblemKind::linear_ode_1st:
        res = d1(y, t, h) + p.a0(t) * y(t) - p.r(t);
        break;
      case ProblemKind::linear_ode_2nd:
        res = d2(y, t, h) + p.a1(t) * d1(y, t, h) + p.a0(t) * y(t) - p.r(t);
        break;
      case ProblemKind::nonlinear_ode_1st:
        res = d1(y, t, h) - p.f(t, y(t));
        break;
      case ProblemKind::linear_pde:
        break;
    }
    if (!(std::abs(res) <= 1e-9)) self_check_failure("equation residual", t, res);
  }
  if (!(std::abs(y(t0) - p.y0) <= 1e-12)) self_check_failure("initial value", t0, y(t0) - p.y0);
  if (p.kind == ProblemKind::linear_ode_2nd) {
    // One-sided fourth-order difference at t0.
    const double hh = 1e-3;
    const double dy = (-25 * y(t0) + 48 * y(t0 + hh) - 36 * y(t0 + 2 * hh) +
                       16 * y(t0 + 3 * hh) - 3 * y(t0 + 4 * hh)) /
                      (12 * hh);
    if (!(std::abs(dy - p.ydot0) <= 1e-9)) self_check_failure("initial slope", t0, dy - p.ydot0);
  }
}

const std::vector<BenchmarkProblem>& problem_catalog() {
  static const std::vector<BenchmarkProblem> catalog = [] {
    std::vector<BenchmarkProblem> out{build_p1(), build_p2(), build_p3(), build_p4()};
    for (const auto& p : out) self_check(p);
    return out;
  }();
  return catalog;
}

const BenchmarkProblem& get_problem(ProblemId id) {
  for (const auto& p : problem_catalog()) {
    if (p.id == id) return p;
  }
  fail(ErrorCode::invalid_argument, "no catalog entry for this problem id");
}

double analytic_solution(const BenchmarkProblem& p, double t) {
  if (p.is_pde()) fail(ErrorCode::invalid_argument, "problem is two-dimensional");
  if (!p.exact_1d) fail(ErrorCode::invalid_argument, "problem has no exact solution");
  if (!(t >= p.domain.t0 - kDomainSlack && t <= p.domain.tf + kDomainSlack)) {
    fail(ErrorCode::domain_error, "point outside the problem domain");
  }
  return p.exact_1d(t);
}

double analytic_solution(const BenchmarkProblem& p, double x, double y) {
  if (!p.is_pde()) fail(ErrorCode::invalid_argument, "problem is one-dimensional");
  if (!p.exact_2d) fail(ErrorCode::invalid_argument, "problem has no exact solution");
  auto inside = [](double s) { return s >= -kDomainSlack && s <= 1 + kDomainSlack; };
  if (!inside(x) || !inside(y)) fail(ErrorCode::domain_error, "point outside the unit square");
  return p.exact_2d(x, y);
}

}  // namespace desolve
