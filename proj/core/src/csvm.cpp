#include "desolve/csvm.hpp"

#include <algorithm>
#include <cmath>

#include "desolve/error.hpp"
#include "desolve/linear_solve.hpp"
#include "solver_common.hpp"

namespace desolve {

namespace {

std::vector<double> tail(std::span<const double> train) {
  return {train.begin() + 1, train.end()};
}

void check_train(const BenchmarkProblem& p, std::span<const double> train) {
  if (train.size() < 2) fail(ErrorCode::invalid_argument, "need at least one collocation point");
  if (train.front() != p.domain.t0) {
    fail(ErrorCode::invalid_argument, "first training point must be the initial time");
  }
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    fail(ErrorCode::invalid_argument, "regularization gamma must be positive and finite");
  }
}

ConstrainedExpression1D expression_for(const BenchmarkProblem& p) {
  if (p.kind == ProblemKind::linear_ode_2nd) return build_ivp_expression(p.domain.t0, p.y0, p.ydot0);
  return build_ivp_expression(p.domain.t0, p.y0);
}

ErrorReport csvm_report_1d(const BenchmarkProblem& problem, const CsvmDualSolution& sol, int n,
                           const KernelConfig& cfg, int test_points) {
  ErrorReport r = detail::start_report(problem, "csvm", n);
  r.hp_sigma = cfg.sigma;
  r.hp_gamma = cfg.gamma;
  detail::fill_errors(
      r, problem, sol.train_points,
      [&](std::span<const double> pts) { return evaluate_csvm(sol, pts); }, test_points);
  return r;
}

}  // namespace

Functional1D constrained_functional(const ConstrainedExpression1D& e, std::span<const double> t,
                                    int deriv) {
  std::vector<std::vector<Anchor1D>> per;
  for (double s : t) per.push_back(e.anchors(s, deriv));
  if (per.empty()) fail(ErrorCode::invalid_argument, "no points given");
  const auto n = static_cast<Eigen::Index>(t.size());
  Functional1D out(per.front().size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].coef.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Anchor1D& a = per[static_cast<std::size_t>(i)][k];
      out[k].coef(i) = a.weight;
      out[k].points.push_back(a.t);
    }
    out[k].order = per.front()[k].order;
  }
  return out;
}

Functional2D constrained_functional(const ConstrainedExpression2D& e, std::span<const Point2> p,
                                    Part2D part) {
  std::vector<std::vector<Anchor2D>> per;
  for (const Point2& q : p) per.push_back(e.anchors(q, part));
  if (per.empty()) fail(ErrorCode::invalid_argument, "no points given");
  const auto n = static_cast<Eigen::Index>(p.size());
  Functional2D out(per.front().size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].coef.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Anchor2D& a = per[static_cast<std::size_t>(i)][k];
      out[k].coef(i) = a.weight;
      out[k].points.push_back(a.point);
    }
    out[k].order_x = per.front()[k].order_x;
    out[k].order_y = per.front()[k].order_y;
  }
  return out;
}

Eigen::MatrixXd csvm_k4(std::span<const double> a, std::span<const double> b, double t0,
                        const Kernel1D& k) {
  const double k00 = k.partial(t0, t0, 0, 0);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          k.partial(a[i], b[j], 0, 0) - k.partial(b[j], t0, 0, 0) - k.partial(a[i], t0, 0, 0) + k00;
    }
  }
  return out;
}

Eigen::MatrixXd csvm_ky(std::span<const double> eval, std::span<const double> train, double t0,
                        const Eigen::VectorXd& p, const Kernel1D& k) {
  if (p.size() != static_cast<Eigen::Index>(train.size())) {
    fail(ErrorCode::invalid_argument, "p must be sampled at the training points");
  }
  Eigen::MatrixXd out = csvm_k4(eval, train, t0, k);
  for (std::size_t i = 0; i < eval.size(); ++i) {
    for (std::size_t j = 0; j < train.size(); ++j) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      out(ii, jj) = k.partial(train[j], eval[i], 1, 0) - k.partial(train[j], t0, 1, 0) -
                    p(jj) * out(ii, jj);
    }
  }
  return out;
}

CsvmLinearSystem assemble_csvm_first_order(const BenchmarkProblem& problem,
                                           std::span<const double> train, double gamma,
                                           const Kernel1D& k) {
  if (problem.kind != ProblemKind::linear_ode_1st) {
    fail(ErrorCode::invalid_argument, "first-order CSVM system needs a first-order linear ODE");
  }
  check_train(problem, train);
  check_gamma(gamma);
  const double t0 = train.front();
  const std::vector<double> ti = tail(train);
  const auto n = static_cast<Eigen::Index>(ti.size());
  Eigen::VectorXd p(n), r(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    p(i) = -problem.a0(ti[static_cast<std::size_t>(i)]);
    r(i) = problem.r(ti[static_cast<std::size_t>(i)]);
  }
  CsvmLinearSystem sys;
  sys.K4 = csvm_k4(ti, ti, t0, k);
  sys.Ky = csvm_ky(ti, ti, t0, p, k);
  sys.M.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = ti[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) {
      const double b = ti[static_cast<std::size_t>(j)];
      sys.M(i, j) = k.partial(a, b, 1, 1) - p(j) * (k.partial(a, b, 1, 0) - k.partial(a, t0, 1, 0)) -
                    p(i) * sys.Ky(i, j) + (i == j ? 1.0 / gamma : 0.0);
    }
  }
  sys.rhs = r + p * problem.y0;
  return sys;
}

std::vector<double> evaluate_csvm(const CsvmDualSolution& sol, std::span<const double> t,
                                  int deriv) {
  if (!sol.expansion_1d || !sol.expression_1d) {
    fail(ErrorCode::invalid_argument, "solution is two-dimensional");
  }
  const ConstrainedExpression1D& e = *sol.expression_1d;
  if (deriv < 0 || deriv > kMaxKernelOrder1D) {
    fail(ErrorCode::unsupported_order, "model derivative order out of range");
  }
  if (t.empty()) return {};
  const Functional1D slots = constrained_functional(e, t, deriv);
  std::vector<Eigen::VectorXd> g;
  for (const FeatureTerm1D& s : slots) {
    g.push_back(sol.expansion_1d->apply(point_functional(s.points, s.order)));
  }
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    double v = e.particular(t[i], deriv);
    for (std::size_t k = 0; k < slots.size(); ++k) {
      v += slots[k].coef(static_cast<Eigen::Index>(i)) * g[k](static_cast<Eigen::Index>(i));
    }
    out[i] = v;
  }
  return out;
}

double evaluate_csvm(const CsvmDualSolution& sol, double t, int deriv) {
  const double pts[1] = {t};
  return evaluate_csvm(sol, pts, deriv).front();
}

std::vector<double> evaluate_csvm(const CsvmDualSolution& sol, std::span<const Point2> p,
                                  Part2D part) {
  if (!sol.expansion_2d || !sol.expression_2d) {
    fail(ErrorCode::invalid_argument, "solution is one-dimensional");
  }
  const ConstrainedExpression2D& e = *sol.expression_2d;
  if (p.empty()) return {};
  const Functional2D slots = constrained_functional(e, p, part);
  std::vector<Eigen::VectorXd> g;
  for (const FeatureTerm2D& s : slots) {
    g.push_back(sol.expansion_2d->apply(point_functional(s.points, s.order_x, s.order_y)));
  }
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    double v = e.particular(p[i], part);
    for (std::size_t k = 0; k < slots.size(); ++k) {
      v += slots[k].coef(static_cast<Eigen::Index>(i)) * g[k](static_cast<Eigen::Index>(i));
    }
    out[i] = v;
  }
  return out;
}

double evaluate_csvm(const CsvmDualSolution& sol, Point2 p, Part2D part) {
  const Point2 pts[1] = {p};
  return evaluate_csvm(sol, pts, part).front();
}

CsvmDualSolution csvm_linear_ode(const BenchmarkProblem& problem, std::span<const double> train,
                                 double gamma, std::shared_ptr<const Kernel1D> kernel,
                                 KktSystem* system) {
  if (!problem.is_linear() || problem.is_pde()) {
    fail(ErrorCode::invalid_argument, "linear CSVM solver needs a linear ODE");
  }
  check_train(problem, train);
  check_gamma(gamma);
  const ConstrainedExpression1D expr = expression_for(problem);
  const std::vector<double> ti = tail(train);
  const auto n = static_cast<Eigen::Index>(ti.size());
  const int order = problem.order();

  // Residual functional sum_k a_k(t_i) psi^(k)(t_i), with a_order = 1.
  Functional1D r_fun;
  Eigen::VectorXd rhs(n);
  std::vector<Eigen::VectorXd> coef(static_cast<std::size_t>(order) + 1, Eigen::VectorXd(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = ti[static_cast<std::size_t>(i)];
    coef[0](i) = problem.a0(t);
    if (order == 2) coef[1](i) = problem.a1(t);
    coef[static_cast<std::size_t>(order)](i) = 1.0;
    rhs(i) = problem.r(t);
    for (int k = 0; k <= order; ++k) rhs(i) -= coef[static_cast<std::size_t>(k)](i) * expr.particular(t, k);
  }
  for (int k = order; k >= 0; --k) {
    for (FeatureTerm1D term : constrained_functional(expr, ti, k)) {
      term.coef = term.coef.cwiseProduct(coef[static_cast<std::size_t>(k)]);
      r_fun.push_back(std::move(term));
    }
  }

  KktSystem sys;
  if (order == 1) {
    CsvmLinearSystem printed = assemble_csvm_first_order(problem, train, gamma, *kernel);
    sys.matrix = std::move(printed.M);
    sys.rhs = std::move(printed.rhs);
  } else {
    sys.matrix = feature_gram(r_fun, r_fun, *kernel);
    sys.matrix.diagonal().array() += 1.0 / gamma;
    sys.rhs = rhs;
  }
  const SquareSolveResult s = solve_square(sys.matrix, sys.rhs, SquareMethod::full_pivot_qr);
  sys.solution = s.solution;
  sys.condition_estimate = s.condition_estimate;

  CsvmDualSolution sol;
  sol.variant = CsvmVariant::linear_ode;
  sol.config.gamma = gamma;
  sol.alpha = sys.solution;
  sol.domain = problem.domain;
  sol.train_points.assign(train.begin(), train.end());
  sol.expression_1d = expr;
  sol.expansion_1d.emplace(std::move(kernel));
  sol.expansion_1d->add(r_fun, sol.alpha);
  if (system) *system = std::move(sys);
  return sol;
}

CsvmDualSolution csvm_nonlinear_ode(const BenchmarkProblem& problem,
                                    std::span<const double> train, double gamma,
                                    std::shared_ptr<const Kernel1D> kernel,
                                    const SquareNewtonOptions& options,
                                    SquareNewtonResult* newton, Eigen::VectorXd* final_residual) {
  if (problem.kind != ProblemKind::nonlinear_ode_1st) {
    fail(ErrorCode::invalid_argument, "nonlinear CSVM solver needs y' = f(t, y)");
  }
  if (!problem.f || !problem.f_y || !problem.f_yy) {
    fail(ErrorCode::invalid_argument, "problem must provide f, f_y and f_yy");
  }
  check_train(problem, train);
  check_gamma(gamma);
  const ConstrainedExpression1D expr = expression_for(problem);
  const std::vector<double> ti = tail(train);
  const auto n = static_cast<Eigen::Index>(ti.size());
  const double y0 = problem.y0;
  const Kernel1D& k = *kernel;

  const Functional1D d_i = point_functional(ti, 1);
  const Functional1D psi_i = constrained_functional(expr, ti, 0);
  const Eigen::MatrixXd k11 = feature_gram(d_i, d_i, k);
  const Eigen::MatrixXd k1c = feature_gram(d_i, psi_i, k);
  const Eigen::MatrixXd k4 = feature_gram(psi_i, psi_i, k);

  auto residual = [&](const Eigen::VectorXd& x) {
    const auto a = x.segment(0, n);
    const auto e = x.segment(n, n);
    const auto y = x.segment(2 * n, n);
    Eigen::VectorXd f(n), fy(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      f(i) = problem.f(ti[static_cast<std::size_t>(i)], y(i));
      fy(i) = problem.f_y(ti[static_cast<std::size_t>(i)], y(i));
    }
    Eigen::VectorXd out(3 * n);
    out.segment(0, n) = k11 * a + k1c * e - f + a / gamma;
    out.segment(n, n) = k1c.transpose() * a + k4 * e - y;
    out.segment(n, n).array() += y0;
    out.segment(2 * n, n) = a.cwiseProduct(fy) + e;
    return out;
  };
  auto jacobian = [&](const Eigen::VectorXd& x) {
    const auto a = x.segment(0, n);
    const auto y = x.segment(2 * n, n);
    Eigen::VectorXd fy(n), fyy(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      fy(i) = problem.f_y(ti[static_cast<std::size_t>(i)], y(i));
      fyy(i) = problem.f_yy(ti[static_cast<std::size_t>(i)], y(i));
    }
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    j.block(0, 0, n, n) = k11 + eye / gamma;
    j.block(0, n, n, n) = k1c;
    j.block(0, 2 * n, n, n) = (-fy).asDiagonal();
    j.block(n, 0, n, n) = k1c.transpose();
    j.block(n, n, n, n) = k4;
    j.block(n, 2 * n, n, n) = -eye;
    j.block(2 * n, 0, n, n) = fy.asDiagonal();
    j.block(2 * n, n, n, n) = eye;
    j.block(2 * n, 2 * n, n, n) = a.cwiseProduct(fyy).asDiagonal();
    return j;
  };

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(3 * n);
  const std::vector<double> heun = detail::heun_trajectory(problem, train);
  for (Eigen::Index i = 0; i < n; ++i) x0(2 * n + i) = heun[static_cast<std::size_t>(i + 1)];

  SquareNewtonOptions opts = options;
  opts.monitor_begin = 2 * n;
  opts.monitor_size = n;
  SquareNewtonResult result = newton_solve_square(residual, jacobian, x0, opts);
  const Eigen::VectorXd& x = result.x;

  CsvmDualSolution sol;
  sol.variant = CsvmVariant::nonlinear_ode;
  sol.config.gamma = gamma;
  sol.alpha = x.segment(0, n);
  sol.eta = x.segment(n, n);
  sol.y_nodes = x.segment(2 * n, n);
  sol.domain = problem.domain;
  sol.train_points.assign(train.begin(), train.end());
  sol.expression_1d = expr;
  sol.expansion_1d.emplace(std::move(kernel));
  sol.expansion_1d->add(d_i, sol.alpha);
  sol.expansion_1d->add(psi_i, sol.eta);
  if (final_residual) *final_residual = residual(x);
  if (newton) *newton = std::move(result);
  return sol;
}

CsvmDualSolution csvm_pde(const BenchmarkProblem& problem, std::span<const Point2> interior,
                          double gamma, std::shared_ptr<const Kernel2D> kernel, KktSystem* system) {
  if (!problem.is_pde()) fail(ErrorCode::invalid_argument, "PDE CSVM solver needs a Poisson problem");
  if (interior.empty()) fail(ErrorCode::invalid_argument, "need interior training points");
  check_gamma(gamma);
  const ConstrainedExpression2D expr = build_dirichlet_expression(problem.boundary);
  const auto n = static_cast<Eigen::Index>(interior.size());
  const Functional2D r_fun = constrained_functional(expr, interior, Part2D::xx) +
                             constrained_functional(expr, interior, Part2D::yy);
  KktSystem sys;
  sys.rhs.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Point2 p = interior[static_cast<std::size_t>(i)];
    sys.rhs(i) = problem.source(p.x, p.y) - expr.particular(p, Part2D::xx) -
                 expr.particular(p, Part2D::yy);
  }
  sys.matrix = feature_gram(r_fun, r_fun, *kernel);
  sys.matrix.diagonal().array() += 1.0 / gamma;
  const SquareSolveResult s = solve_square(sys.matrix, sys.rhs, SquareMethod::full_pivot_qr);
  sys.solution = s.solution;
  sys.condition_estimate = s.condition_estimate;

  CsvmDualSolution sol;
  sol.variant = CsvmVariant::pde;
  sol.config.gamma = gamma;
  sol.alpha = sys.solution;
  sol.domain = {0.0, 1.0};
  sol.interior_points.assign(interior.begin(), interior.end());
  sol.expression_2d = expr;
  sol.expansion_2d.emplace(std::move(kernel));
  sol.expansion_2d->add(r_fun, sol.alpha);
  if (system) *system = std::move(sys);
  return sol;
}

CsvmResult solve_linear_ode_csvm(const BenchmarkProblem& problem, int n, const KernelConfig& cfg,
                                 int test_points) {
  cfg.validate();
  detail::Stopwatch clock;
  const std::vector<double> train = svm_training_points(problem, n);
  KktSystem sys;
  CsvmDualSolution sol =
      csvm_linear_ode(problem, train, cfg.gamma, std::make_shared<RbfKernel1D>(cfg.sigma), &sys);
  sol.config = cfg;
  const double elapsed = clock.seconds();
  CsvmResult out{std::move(sol), {}, {}, sys.matrix * sys.solution - sys.rhs,
                 sys.rhs.lpNorm<Eigen::Infinity>()};
  out.report = csvm_report_1d(problem, out.solution, n, cfg, test_points);
  out.report.train_time_s = elapsed;
  out.report.condition_estimate = sys.condition_estimate;
  return out;
}

CsvmResult solve_nonlinear_ode_csvm(const BenchmarkProblem& problem, int n,
                                    const KernelConfig& cfg, const SquareNewtonOptions& options,
                                    int test_points) {
  cfg.validate();
  detail::Stopwatch clock;
  const std::vector<double> train = svm_training_points(problem, n);
  SquareNewtonResult newton;
  Eigen::VectorXd res;
  CsvmDualSolution sol = csvm_nonlinear_ode(problem, train, cfg.gamma,
                                            std::make_shared<RbfKernel1D>(cfg.sigma), options,
                                            &newton, &res);
  sol.config = cfg;
  const double elapsed = clock.seconds();
  double scale = std::abs(problem.y0);
  for (Eigen::Index i = 0; i < sol.y_nodes.size(); ++i) {
    scale = std::max(scale, std::abs(problem.f(train[static_cast<std::size_t>(i + 1)], sol.y_nodes(i))));
  }
  CsvmResult out{std::move(sol), {}, newton.report, std::move(res), scale};
  out.report = csvm_report_1d(problem, out.solution, n, cfg, test_points);
  out.report.train_time_s = elapsed;
  out.report.converged = newton.report.converged;
  out.report.iterations = newton.report.iterations;
  out.report.condition_estimate = newton.condition_estimate;
  return out;
}

CsvmResult solve_pde_csvm(const BenchmarkProblem& problem, int n_interior, const KernelConfig& cfg,
                          int test_points) {
  cfg.validate();
  detail::Stopwatch clock;
  const SquareGridPoints pts = svm_pde_points(n_interior);
  KktSystem sys;
  CsvmDualSolution sol =
      csvm_pde(problem, pts.interior, cfg.gamma, std::make_shared<RbfKernel2D>(cfg.sigma), &sys);
  sol.config = cfg;
  const double elapsed = clock.seconds();
  CsvmResult out{std::move(sol), {}, {}, sys.matrix * sys.solution - sys.rhs,
                 sys.rhs.lpNorm<Eigen::Infinity>()};
  ErrorReport& r = out.report;
  r = detail::start_report(problem, "csvm", n_interior);
  r.hp_sigma = cfg.sigma;
  r.hp_gamma = cfg.gamma;
  r.train_time_s = elapsed;
  r.condition_estimate = sys.condition_estimate;
  std::vector<Point2> train = pts.interior;
  train.insert(train.end(), pts.boundary.begin(), pts.boundary.end());
  detail::fill_errors(
      r, problem, train,
      [&](std::span<const Point2> q) { return evaluate_csvm(out.solution, q); }, test_points);
  return out;
}

}  // namespace desolve
