#include "desolve/lssvm.hpp"

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

/// Assembles and solves
///   [G_RR + I/gamma  G_RC  rho] [alpha]   [r]
///   [G_CR            G_CC  kap] [beta ] = [c]
///   [rho^T           kap^T 0  ] [b    ]   [0]
template <typename Functional, typename Kernel>
KktSystem solve_kkt(const Functional& r_fun, const Functional& c_fun, const Eigen::VectorXd& rho,
                    const Eigen::VectorXd& kap, const Eigen::VectorXd& r, const Eigen::VectorXd& c,
                    double gamma, const Kernel& kernel) {
  const Eigen::Index n = rho.size();
  const Eigen::Index k = kap.size();
  const Eigen::Index size = n + k + 1;
  KktSystem sys;
  sys.matrix = Eigen::MatrixXd::Zero(size, size);
  sys.matrix.topLeftCorner(n, n) = feature_gram(r_fun, r_fun, kernel);
  sys.matrix.topLeftCorner(n, n).diagonal().array() += 1.0 / gamma;
  const Eigen::MatrixXd rc = feature_gram(r_fun, c_fun, kernel);
  sys.matrix.block(0, n, n, k) = rc;
  sys.matrix.block(n, 0, k, n) = rc.transpose();
  sys.matrix.block(n, n, k, k) = feature_gram(c_fun, c_fun, kernel);
  sys.matrix.block(0, n + k, n, 1) = rho;
  sys.matrix.block(n + k, 0, 1, n) = rho.transpose();
  sys.matrix.block(n, n + k, k, 1) = kap;
  sys.matrix.block(n + k, n, 1, k) = kap.transpose();
  sys.rhs = Eigen::VectorXd::Zero(size);
  sys.rhs.head(n) = r;
  sys.rhs.segment(n, k) = c;
  const SquareSolveResult s = solve_square(sys.matrix, sys.rhs);
  sys.solution = s.solution;
  sys.condition_estimate = s.condition_estimate;
  return sys;
}

ErrorReport svm_report_1d(const BenchmarkProblem& problem, const DualSolution& sol, int n,
                          const KernelConfig& cfg, int test_points) {
  ErrorReport r = detail::start_report(problem, "lssvm", n);
  r.hp_sigma = cfg.sigma;
  r.hp_gamma = cfg.gamma;
  detail::fill_errors(
      r, problem, sol.train_points,
      [&](std::span<const double> pts) { return evaluate_dual(sol, pts); }, test_points);
  return r;
}

}  // namespace

std::vector<double> svm_training_points(const BenchmarkProblem& problem, int n) {
  return make_collocation_grid(n, problem.domain.t0, problem.domain.tf).t_points;
}

SquareGridPoints svm_pde_points(int n_interior) {
  const int side = square_grid_side(n_interior);
  SquareGridPoints out;
  for (const Point2& p : tensor_grid(make_collocation_grid(side - 1, 0.0, 1.0).t_points)) {
    (on_unit_square_boundary(p) ? out.boundary : out.interior).push_back(p);
  }
  return out;
}

double dirichlet_value(const DirichletBoundary& b, Point2 p) {
  if (p.y == 0.0) return b.c1(p.x);
  if (p.y == 1.0) return b.c3(p.x);
  if (p.x == 0.0) return b.c2(p.y);
  if (p.x == 1.0) return b.c4(p.y);
  fail(ErrorCode::invalid_argument, "point is not on the unit-square boundary");
}

std::vector<double> evaluate_dual(const DualSolution& sol, std::span<const double> t, int deriv) {
  if (!sol.expansion_1d) fail(ErrorCode::invalid_argument, "solution is two-dimensional");
  if (deriv < 0 || deriv > kMaxKernelOrder1D) {
    fail(ErrorCode::unsupported_order, "model derivative order out of range");
  }
  if (t.empty()) return {};
  const Eigen::VectorXd v = sol.expansion_1d->apply(point_functional(t, deriv));
  std::vector<double> out(v.data(), v.data() + v.size());
  if (deriv == 0) {
    for (double& y : out) y += sol.b;
  }
  return out;
}

double evaluate_dual(const DualSolution& sol, double t, int deriv) {
  const double pts[1] = {t};
  return evaluate_dual(sol, pts, deriv).front();
}

std::vector<double> evaluate_dual(const DualSolution& sol, std::span<const Point2> p, int kx,
                                  int ky) {
  if (!sol.expansion_2d) fail(ErrorCode::invalid_argument, "solution is one-dimensional");
  if (p.empty()) return {};
  const Eigen::VectorXd v = sol.expansion_2d->apply(point_functional(p, kx, ky));
  std::vector<double> out(v.data(), v.data() + v.size());
  if (kx == 0 && ky == 0) {
    for (double& z : out) z += sol.b;
  }
  return out;
}

double evaluate_dual(const DualSolution& sol, Point2 p, int kx, int ky) {
  const Point2 pts[1] = {p};
  return evaluate_dual(sol, pts, kx, ky).front();
}

DualSolution lssvm_linear_ode(const BenchmarkProblem& problem, std::span<const double> train,
                              double gamma, std::shared_ptr<const Kernel1D> kernel,
                              KktSystem* system) {
  if (!problem.is_linear() || problem.is_pde()) {
    fail(ErrorCode::invalid_argument, "linear LS-SVM solver needs a linear ODE");
  }
  check_train(problem, train);
  check_gamma(gamma);
  const std::vector<double> ti = tail(train);
  const auto n = static_cast<Eigen::Index>(ti.size());
  const int order = problem.order();
  const double t0 = train.front();

  Eigen::VectorXd a0(n), a1(n), r(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = ti[static_cast<std::size_t>(i)];
    a0(i) = problem.a0(t);
    a1(i) = order == 2 ? problem.a1(t) : 0.0;
    r(i) = problem.r(t);
  }
  Functional1D r_fun{{Eigen::VectorXd::Ones(n), ti, order}};
  if (order == 2) r_fun.push_back({a1, ti, 1});
  r_fun.push_back({a0, ti, 0});

  Functional1D c_fun;
  Eigen::VectorXd kap, c;
  if (order == 1) {
    c_fun = {{Eigen::VectorXd::Ones(1), {t0}, 0}};
    kap = Eigen::VectorXd::Ones(1);
    c = Eigen::VectorXd::Constant(1, problem.y0);
  } else {
    c_fun = {{Eigen::Vector2d(1.0, 0.0), {t0, t0}, 0}, {Eigen::Vector2d(0.0, 1.0), {t0, t0}, 1}};
    kap = Eigen::Vector2d(1.0, 0.0);
    c = Eigen::Vector2d(problem.y0, problem.ydot0);
  }

  KktSystem sys = solve_kkt(r_fun, c_fun, a0, kap, r, c, gamma, *kernel);
  DualSolution sol;
  sol.variant = DualVariant::linear_ode;
  sol.config.gamma = gamma;
  sol.alpha = sys.solution.head(n);
  sol.beta = sys.solution.segment(n, kap.size());
  sol.b = sys.solution(sys.solution.size() - 1);
  sol.domain = problem.domain;
  sol.train_points.assign(train.begin(), train.end());
  sol.expansion_1d.emplace(std::move(kernel));
  sol.expansion_1d->add(r_fun, sol.alpha);
  sol.expansion_1d->add(c_fun, sol.beta);
  if (system) *system = std::move(sys);
  return sol;
}

DualSolution lssvm_nonlinear_ode(const BenchmarkProblem& problem, std::span<const double> train,
                                 double gamma, std::shared_ptr<const Kernel1D> kernel,
                                 const SquareNewtonOptions& options, SquareNewtonResult* newton,
                                 Eigen::VectorXd* final_residual) {
  if (problem.kind != ProblemKind::nonlinear_ode_1st) {
    fail(ErrorCode::invalid_argument, "nonlinear LS-SVM solver needs y' = f(t, y)");
  }
  if (!problem.f || !problem.f_y || !problem.f_yy) {
    fail(ErrorCode::invalid_argument, "problem must provide f, f_y and f_yy");
  }
  check_train(problem, train);
  check_gamma(gamma);
  const std::vector<double> ti = tail(train);
  const auto n = static_cast<Eigen::Index>(ti.size());
  const double t0 = train.front();
  const double y0 = problem.y0;
  const std::vector<double> origin{t0};
  const Kernel1D& k = *kernel;

  const Functional1D d_i = point_functional(ti, 1);
  const Functional1D v_i = point_functional(ti, 0);
  const Functional1D v_0 = point_functional(origin, 0);
  const Eigen::MatrixXd k11 = feature_gram(d_i, d_i, k);
  const Eigen::MatrixXd k1 = feature_gram(d_i, v_i, k);
  const Eigen::MatrixXd k00 = feature_gram(v_i, v_i, k);
  const Eigen::VectorXd k1i0 = feature_gram(d_i, v_0, k).col(0);
  const Eigen::VectorXd ki0 = feature_gram(v_i, v_0, k).col(0);
  const double kzz = feature_gram(v_0, v_0, k)(0, 0);

  const Eigen::Index size = 3 * n + 2;
  const Eigen::Index ib = 3 * n;
  const Eigen::Index ibias = 3 * n + 1;

  auto residual = [&](const Eigen::VectorXd& x) {
    const auto a = x.segment(0, n);
    const auto e = x.segment(n, n);
    const auto y = x.segment(2 * n, n);
    const double be = x(ib);
    const double b = x(ibias);
    Eigen::VectorXd f(n), fy(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      f(i) = problem.f(ti[static_cast<std::size_t>(i)], y(i));
      fy(i) = problem.f_y(ti[static_cast<std::size_t>(i)], y(i));
    }
    Eigen::VectorXd out(size);
    out.segment(0, n) = k11 * a + k1 * e + be * k1i0 + a / gamma - f;
    out.segment(n, n) = k1.transpose() * a + k00 * e + be * ki0 - y;
    out.segment(n, n).array() += b;
    out(2 * n) = k1i0.dot(a) + ki0.dot(e) + be * kzz + b - y0;
    out(2 * n + 1) = be + e.sum();
    out.segment(2 * n + 2, n) = a.cwiseProduct(fy) + e;
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
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(size, size);
    j.block(0, 0, n, n) = k11 + eye / gamma;
    j.block(0, n, n, n) = k1;
    j.block(0, 2 * n, n, n) = (-fy).asDiagonal();
    j.block(0, ib, n, 1) = k1i0;
    j.block(n, 0, n, n) = k1.transpose();
    j.block(n, n, n, n) = k00;
    j.block(n, 2 * n, n, n) = -eye;
    j.block(n, ib, n, 1) = ki0;
    j.block(n, ibias, n, 1).setOnes();
    j.block(2 * n, 0, 1, n) = k1i0.transpose();
    j.block(2 * n, n, 1, n) = ki0.transpose();
    j(2 * n, ib) = kzz;
    j(2 * n, ibias) = 1.0;
    j.block(2 * n + 1, n, 1, n).setOnes();
    j(2 * n + 1, ib) = 1.0;
    j.block(2 * n + 2, 0, n, n) = fy.asDiagonal();
    j.block(2 * n + 2, n, n, n) = eye;
    j.block(2 * n + 2, 2 * n, n, n) = a.cwiseProduct(fyy).asDiagonal();
    return j;
  };

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(size);
  const std::vector<double> heun = detail::heun_trajectory(problem, train);
  for (Eigen::Index i = 0; i < n; ++i) x0(2 * n + i) = heun[static_cast<std::size_t>(i + 1)];
  x0(ibias) = y0;

  SquareNewtonOptions opts = options;
  opts.monitor_begin = 2 * n;
  opts.monitor_size = n;
  SquareNewtonResult result = newton_solve_square(residual, jacobian, x0, opts);
  const Eigen::VectorXd& x = result.x;

  DualSolution sol;
  sol.variant = DualVariant::nonlinear_ode;
  sol.config.gamma = gamma;
  sol.alpha = x.segment(0, n);
  sol.eta = x.segment(n, n);
  sol.y_nodes = x.segment(2 * n, n);
  sol.beta = x.segment(ib, 1);
  sol.b = x(ibias);
  sol.domain = problem.domain;
  sol.train_points.assign(train.begin(), train.end());
  sol.expansion_1d.emplace(std::move(kernel));
  sol.expansion_1d->add(d_i, sol.alpha);
  sol.expansion_1d->add(v_i, sol.eta);
  sol.expansion_1d->add(v_0, sol.beta);
  if (final_residual) *final_residual = residual(x);
  if (newton) *newton = std::move(result);
  return sol;
}

DualSolution lssvm_pde(const BenchmarkProblem& problem, std::span<const Point2> interior,
                       std::span<const Point2> boundary, double gamma,
                       std::shared_ptr<const Kernel2D> kernel, KktSystem* system) {
  if (!problem.is_pde()) fail(ErrorCode::invalid_argument, "PDE LS-SVM solver needs a Poisson problem");
  if (interior.empty() || boundary.empty()) {
    fail(ErrorCode::invalid_argument, "need interior and boundary training points");
  }
  check_gamma(gamma);
  const auto n = static_cast<Eigen::Index>(interior.size());
  const auto nb = static_cast<Eigen::Index>(boundary.size());
  const Functional2D r_fun = point_functional(interior, 2, 0) + point_functional(interior, 0, 2);
  const Functional2D c_fun = point_functional(boundary, 0, 0);
  Eigen::VectorXd r(n), c(nb);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Point2 p = interior[static_cast<std::size_t>(i)];
    r(i) = problem.source(p.x, p.y);
  }
  for (Eigen::Index i = 0; i < nb; ++i) {
    c(i) = dirichlet_value(problem.boundary, boundary[static_cast<std::size_t>(i)]);
  }
  KktSystem sys = solve_kkt(r_fun, c_fun, Eigen::VectorXd::Zero(n), Eigen::VectorXd::Ones(nb), r,
                            c, gamma, *kernel);
  DualSolution sol;
  sol.variant = DualVariant::pde;
  sol.config.gamma = gamma;
  sol.alpha = sys.solution.head(n);
  sol.beta = sys.solution.segment(n, nb);
  sol.b = sys.solution(sys.solution.size() - 1);
  sol.domain = {0.0, 1.0};
  sol.interior_points.assign(interior.begin(), interior.end());
  sol.boundary_points.assign(boundary.begin(), boundary.end());
  sol.expansion_2d.emplace(std::move(kernel));
  sol.expansion_2d->add(r_fun, sol.alpha);
  sol.expansion_2d->add(c_fun, sol.beta);
  if (system) *system = std::move(sys);
  return sol;
}

LssvmResult solve_linear_ode_lssvm(const BenchmarkProblem& problem, int n, const KernelConfig& cfg,
                                   int test_points) {
  cfg.validate();
  detail::Stopwatch clock;
  const std::vector<double> train = svm_training_points(problem, n);
  KktSystem sys;
  DualSolution sol =
      lssvm_linear_ode(problem, train, cfg.gamma, std::make_shared<RbfKernel1D>(cfg.sigma), &sys);
  sol.config = cfg;
  const double elapsed = clock.seconds();
  LssvmResult out{std::move(sol), {}, {}, sys.matrix * sys.solution - sys.rhs,
                  sys.rhs.lpNorm<Eigen::Infinity>()};
  out.report = svm_report_1d(problem, out.solution, n, cfg, test_points);
  out.report.train_time_s = elapsed;
  out.report.condition_estimate = sys.condition_estimate;
  return out;
}

LssvmResult solve_nonlinear_ode_lssvm(const BenchmarkProblem& problem, int n,
                                      const KernelConfig& cfg, const SquareNewtonOptions& options,
                                      int test_points) {
  cfg.validate();
  detail::Stopwatch clock;
  const std::vector<double> train = svm_training_points(problem, n);
  SquareNewtonResult newton;
  Eigen::VectorXd res;
  DualSolution sol = lssvm_nonlinear_ode(problem, train, cfg.gamma,
                                         std::make_shared<RbfKernel1D>(cfg.sigma), options,
                                         &newton, &res);
  sol.config = cfg;
  const double elapsed = clock.seconds();
  double scale = std::abs(problem.y0);
  for (Eigen::Index i = 0; i < sol.y_nodes.size(); ++i) {
    scale = std::max(scale, std::abs(problem.f(train[static_cast<std::size_t>(i + 1)], sol.y_nodes(i))));
  }
  LssvmResult out{std::move(sol), {}, newton.report, std::move(res), scale};
  out.report = svm_report_1d(problem, out.solution, n, cfg, test_points);
  out.report.train_time_s = elapsed;
  out.report.converged = newton.report.converged;
  out.report.iterations = newton.report.iterations;
  out.report.condition_estimate = newton.condition_estimate;
  return out;
}

LssvmResult solve_linear_pde_lssvm(const BenchmarkProblem& problem, int n_interior,
                                   const KernelConfig& cfg, int test_points) {
  cfg.validate();
  detail::Stopwatch clock;
  const SquareGridPoints pts = svm_pde_points(n_interior);
  KktSystem sys;
  DualSolution sol = lssvm_pde(problem, pts.interior, pts.boundary, cfg.gamma,
                               std::make_shared<RbfKernel2D>(cfg.sigma), &sys);
  sol.config = cfg;
  const double elapsed = clock.seconds();
  LssvmResult out{std::move(sol), {}, {}, sys.matrix * sys.solution - sys.rhs,
                  sys.rhs.lpNorm<Eigen::Infinity>()};
  ErrorReport& r = out.report;
  r = detail::start_report(problem, "lssvm", n_interior);
  r.hp_sigma = cfg.sigma;
  r.hp_gamma = cfg.gamma;
  r.train_time_s = elapsed;
  r.condition_estimate = sys.condition_estimate;
  std::vector<Point2> train = pts.interior;
  train.insert(train.end(), pts.boundary.begin(), pts.boundary.end());
  detail::fill_errors(
      r, problem, train,
      [&](std::span<const Point2> q) { return evaluate_dual(out.solution, q); }, test_points);
  return out;
}

}  // namespace desolve
