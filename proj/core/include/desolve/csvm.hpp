#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "desolve/kernel.hpp"
#include "desolve/kernel_functional.hpp"
#include "desolve/lssvm.hpp"
#include "desolve/newton.hpp"
#include "desolve/problems.hpp"
#include "desolve/report.hpp"
#include "desolve/tfc.hpp"

namespace desolve {

enum class CsvmVariant { linear_ode, nonlinear_ode, pde };

/// First-order linear system sum_j M_ij alpha_j = r(t_i) + p(t_i) y0 for
/// y' - p(t) y = r(t), with
///   M_ij  = K11(i,j) - p_j [K1(t_i,t_j) - K1(t_i,t_0)] - p_i Ky(i,j) + delta_ij / gamma
///   K4(i,j) = K(t_i,t_j) - K(t_j,t_0) - K(t_i,t_0) + K(t_0,t_0)
///   Ky(i,j) = K1(t_j,t_i) - K1(t_j,t_0) - p_j K4(i,j)
/// where K1(a, b) = phi'(a)^T phi(b).
struct CsvmLinearSystem {
  Eigen::MatrixXd M;
  Eigen::VectorXd rhs;
  Eigen::MatrixXd K4;
  Eigen::MatrixXd Ky;
};

/// K4 between evaluation points a and training points b.
Eigen::MatrixXd csvm_k4(std::span<const double> a, std::span<const double> b, double t0,
                        const Kernel1D& kernel);
/// Ky between evaluation points and training points, p given at the training points.
Eigen::MatrixXd csvm_ky(std::span<const double> eval, std::span<const double> train, double t0,
                        const Eigen::VectorXd& p, const Kernel1D& kernel);

/// train includes t0 as its first entry.
CsvmLinearSystem assemble_csvm_first_order(const BenchmarkProblem& problem,
                                           std::span<const double> train, double gamma,
                                           const Kernel1D& kernel);

/// Feature-space functionals of the constrained expression: for each point,
/// the g-dependent part of y^(deriv) (or of z, z_xx, z_yy) with g replaced by
/// the feature map.
Functional1D constrained_functional(const ConstrainedExpression1D& e, std::span<const double> t,
                                    int deriv);
Functional2D constrained_functional(const ConstrainedExpression2D& e, std::span<const Point2> p,
                                    Part2D part);

/// CSVM dual variables. The model is the constrained expression whose free
/// function is the kernel expansion, so constraints hold for any alpha.
struct CsvmDualSolution {
  CsvmVariant variant = CsvmVariant::linear_ode;
  KernelConfig config;
  Eigen::VectorXd alpha;
  Eigen::VectorXd eta;
  Eigen::VectorXd y_nodes;
  Interval domain;
  std::vector<double> train_points;
  std::vector<Point2> interior_points;
  std::optional<ConstrainedExpression1D> expression_1d;
  std::optional<ConstrainedExpression2D> expression_2d;
  std::optional<KernelExpansion1D> expansion_1d;
  std::optional<KernelExpansion2D> expansion_2d;
};

std::vector<double> evaluate_csvm(const CsvmDualSolution& sol, std::span<const double> t,
                                  int deriv = 0);
double evaluate_csvm(const CsvmDualSolution& sol, double t, int deriv = 0);
std::vector<double> evaluate_csvm(const CsvmDualSolution& sol, std::span<const Point2> p,
                                  Part2D part = Part2D::value);
double evaluate_csvm(const CsvmDualSolution& sol, Point2 p, Part2D part = Part2D::value);

struct CsvmResult {
  CsvmDualSolution solution;
  ErrorReport report;
  ConvergenceReport newton;
  Eigen::VectorXd kkt_residual;
  double rhs_norm = 0.0;
};

CsvmResult solve_linear_ode_csvm(const BenchmarkProblem& problem, int n, const KernelConfig& cfg,
                                 int test_points = 0);
CsvmResult solve_nonlinear_ode_csvm(const BenchmarkProblem& problem, int n,
                                    const KernelConfig& cfg,
                                    const SquareNewtonOptions& options = {},
                                    int test_points = 0);
CsvmResult solve_pde_csvm(const BenchmarkProblem& problem, int n_interior, const KernelConfig& cfg,
                          int test_points = 0);

/// Kernel-generic forms; train includes t0 first.
CsvmDualSolution csvm_linear_ode(const BenchmarkProblem& problem, std::span<const double> train,
                                 double gamma, std::shared_ptr<const Kernel1D> kernel,
                                 KktSystem* system = nullptr);
CsvmDualSolution csvm_nonlinear_ode(const BenchmarkProblem& problem,
                                    std::span<const double> train, double gamma,
                                    std::shared_ptr<const Kernel1D> kernel,
                                    const SquareNewtonOptions& options = {},
                                    SquareNewtonResult* newton = nullptr,
                                    Eigen::VectorXd* final_residual = nullptr);
CsvmDualSolution csvm_pde(const BenchmarkProblem& problem, std::span<const Point2> interior,
                          double gamma, std::shared_ptr<const Kernel2D> kernel,
                          KktSystem* system = nullptr);

}  // namespace desolve
