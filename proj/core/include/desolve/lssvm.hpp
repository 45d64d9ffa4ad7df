#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "desolve/grid.hpp"
#include "desolve/kernel.hpp"
#include "desolve/kernel_functional.hpp"
#include "desolve/newton.hpp"
#include "desolve/problems.hpp"
#include "desolve/report.hpp"

namespace desolve {

enum class DualVariant { linear_ode, nonlinear_ode, pde };

/// A dense linear system together with its computed solution.
struct KktSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  Eigen::VectorXd solution;
  double condition_estimate = 0.0;
};

/// LS-SVM dual variables and the kernel expansion they define. beta holds one
/// multiplier per exact constraint row (initial values or boundary points),
/// eta and y_nodes are only used by the nonlinear variant.
struct DualSolution {
  DualVariant variant = DualVariant::linear_ode;
  KernelConfig config;
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  Eigen::VectorXd eta;
  Eigen::VectorXd y_nodes;
  double b = 0.0;
  Interval domain;
  std::vector<double> train_points;
  std::vector<Point2> interior_points;
  std::vector<Point2> boundary_points;
  std::optional<KernelExpansion1D> expansion_1d;
  std::optional<KernelExpansion2D> expansion_2d;
};

/// Model value (or t-derivative) at the given points. PDE solutions take 2-D
/// points and derivative orders (kx, ky) with kx + ky <= 2. Calling the wrong
/// dimension raises invalid-argument.
std::vector<double> evaluate_dual(const DualSolution& sol, std::span<const double> t, int deriv = 0);
double evaluate_dual(const DualSolution& sol, double t, int deriv = 0);
std::vector<double> evaluate_dual(const DualSolution& sol, std::span<const Point2> p, int kx = 0,
                                  int ky = 0);
double evaluate_dual(const DualSolution& sol, Point2 p, int kx = 0, int ky = 0);

struct LssvmResult {
  DualSolution solution;
  ErrorReport report;
  ConvergenceReport newton;
  /// Residual of every stationarity equation at the returned solution and the
  /// infinity norm of the right-hand side it is measured against.
  Eigen::VectorXd kkt_residual;
  double rhs_norm = 0.0;
};

/// Chebyshev-Gauss-Lobatto training abscissae t0, ..., tf (N intervals). t0
/// carries the initial conditions, the remaining N points the collocated
/// equation.
std::vector<double> svm_training_points(const BenchmarkProblem& problem, int n);

struct SquareGridPoints {
  std::vector<Point2> interior;
  std::vector<Point2> boundary;
};

/// Chebyshev tensor grid of side ceil(sqrt(n_interior)) + 2 on the unit
/// square, split into interior and boundary points.
SquareGridPoints svm_pde_points(int n_interior);

/// Boundary value prescribed at a point of the unit-square boundary.
double dirichlet_value(const DirichletBoundary& boundary, Point2 p);

LssvmResult solve_linear_ode_lssvm(const BenchmarkProblem& problem, int n, const KernelConfig& cfg,
                                   int test_points = 0);
LssvmResult solve_nonlinear_ode_lssvm(const BenchmarkProblem& problem, int n,
                                      const KernelConfig& cfg,
                                      const SquareNewtonOptions& options = {},
                                      int test_points = 0);
LssvmResult solve_linear_pde_lssvm(const BenchmarkProblem& problem, int n_interior,
                                   const KernelConfig& cfg, int test_points = 0);

/// Kernel-generic forms used by the solvers above. train includes t0 as its
/// first entry. The KKT system is returned through `system` when non-null.
DualSolution lssvm_linear_ode(const BenchmarkProblem& problem, std::span<const double> train,
                              double gamma, std::shared_ptr<const Kernel1D> kernel,
                              KktSystem* system = nullptr);
DualSolution lssvm_nonlinear_ode(const BenchmarkProblem& problem, std::span<const double> train,
                                 double gamma, std::shared_ptr<const Kernel1D> kernel,
                                 const SquareNewtonOptions& options = {},
                                 SquareNewtonResult* newton = nullptr,
                                 Eigen::VectorXd* final_residual = nullptr);
DualSolution lssvm_pde(const BenchmarkProblem& problem, std::span<const Point2> interior,
                       std::span<const Point2> boundary, double gamma,
                       std::shared_ptr<const Kernel2D> kernel, KktSystem* system = nullptr);

}  // namespace desolve
