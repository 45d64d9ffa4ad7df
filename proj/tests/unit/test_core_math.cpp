#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "desolve/chebyshev.hpp"
#include "desolve/grid.hpp"
#include "desolve/kernel.hpp"
#include "desolve/linear_solve.hpp"
#include "desolve/metrics.hpp"
#include "desolve/nelder_mead.hpp"
#include "desolve/newton.hpp"
#include "expect_error.hpp"

using namespace desolve;

namespace {

// Second-order central difference with the step used by the derivative suite.
double fd_step(double t) { return 1e-5 * std::max(1.0, std::abs(t)); }

}  // namespace

TEST(CollocationGrid, ThreePointsOnSymmetricInterval) {
  const CollocationGrid g = make_collocation_grid(2, -1.0, 1.0);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g.x_points[0], -1.0);
  EXPECT_EQ(g.x_points[1], 0.0);
  EXPECT_EQ(g.x_points[2], 1.0);
  EXPECT_EQ(g.t_points[0], -1.0);
  EXPECT_EQ(g.t_points[1], 0.0);
  EXPECT_EQ(g.t_points[2], 1.0);
  EXPECT_EQ(g.scale_c, 1.0);
}

TEST(CollocationGrid, FivePointsMatchCosines) {
  const CollocationGrid g = make_collocation_grid(4, -1.0, 1.0);
  const double expected[] = {-1.0, -0.70710678118654752, 0.0, 0.70710678118654752, 1.0};
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(g.x_points[i], expected[i], 1e-15);
    EXPECT_NEAR(g.x_points[i], -std::cos(i * std::numbers::pi / 4), 1e-15);
  }
}

TEST(CollocationGrid, EndpointsOnUnitInterval) {
  const CollocationGrid g = make_collocation_grid(100, 0.0, 1.0);
  EXPECT_EQ(g.t_points.front(), 0.0);
  EXPECT_EQ(g.t_points.back(), 1.0);
  EXPECT_EQ(g.scale_c, 2.0);
  for (std::size_t i = 1; i < g.size(); ++i) {
    EXPECT_LT(g.x_points[i - 1], g.x_points[i]);
    EXPECT_NEAR(g.t_points[i], g.to_t(g.x_points[i]), 2e-16);
  }
}

TEST(CollocationGrid, RejectsBadArguments) {
  EXPECT_DESOLVE_ERROR(make_collocation_grid(0, 0.0, 1.0), ErrorCode::invalid_argument);
  EXPECT_DESOLVE_ERROR(make_collocation_grid(4, 1.0, 1.0), ErrorCode::invalid_argument);
  EXPECT_DESOLVE_ERROR(make_collocation_grid(4, 2.0, 1.0), ErrorCode::invalid_argument);
}

TEST(ChebyshevBasis, RowAtOneHalf) {
  const Eigen::RowVectorXd row = chebyshev_row(0.5, 4, 0);
  EXPECT_NEAR(row[0], 1.0, 1e-15);
  EXPECT_NEAR(row[1], 0.5, 1e-15);
  EXPECT_NEAR(row[2], -0.5, 1e-15);
  EXPECT_NEAR(row[3], -1.0, 1e-15);
}

TEST(ChebyshevBasis, EndpointRows) {
  const std::vector<double> x = {-1.0, 1.0};
  const BasisMatrix b = chebyshev_basis(x, 12, 1);
  for (int j = 0; j < 12; ++j) {
    EXPECT_EQ(b.values()(1, j), 1.0);
    EXPECT_EQ(b.values()(0, j), j % 2 == 0 ? 1.0 : -1.0);
    EXPECT_NEAR(b.order(1)(1, j), static_cast<double>(j * j), 1e-10);
  }
}

TEST(ChebyshevBasis, DerivativeMatchesFiniteDifference) {
  const double x = 0.3;
  const double h = 1e-6;
  const Eigen::RowVectorXd d = chebyshev_row(x, 8, 1);
  const Eigen::RowVectorXd fd = (chebyshev_row(x + h, 8, 0) - chebyshev_row(x - h, 8, 0)) / (2 * h);
  for (int j = 1; j < 8; ++j) {
    EXPECT_LE(std::abs(fd[j] - d[j]), 1e-7 * std::max(1.0, std::abs(d[j]))) << "j=" << j;
  }
}

TEST(ChebyshevBasis, HigherDerivativesMatchFiniteDifferences) {
  const double x = -0.41;
  const double h = 1e-5;
  for (int k = 1; k <= kMaxBasisDerivative; ++k) {
    const Eigen::RowVectorXd d = chebyshev_row(x, 10, k);
    const Eigen::RowVectorXd fd =
        (chebyshev_row(x + h, 10, k - 1) - chebyshev_row(x - h, 10, k - 1)) / (2 * h);
    for (int j = 0; j < 10; ++j) {
      EXPECT_LE(std::abs(fd[j] - d[j]), 1e-6 * std::max(1.0, std::abs(d[j]))) << "k=" << k << " j=" << j;
    }
  }
}

TEST(ChebyshevBasis, ThreeTermRecurrenceHolds) {
  const CollocationGrid g = make_collocation_grid(60, -1.0, 1.0);
  const BasisMatrix b = chebyshev_basis(g, 40, 0);
  const Eigen::MatrixXd& v = b.values();
  for (int j = 1; j + 1 < 40; ++j) {
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const double x = g.x_points[static_cast<std::size_t>(i)];
      EXPECT_LE(std::abs(v(i, j + 1) - (2 * x * v(i, j) - v(i, j - 1))), 1e-13);
    }
  }
}

TEST(ChebyshevBasis, RejectsUnsupportedOrder) {
  const std::vector<double> x = {0.0};
  EXPECT_DESOLVE_ERROR(chebyshev_basis(x, 4, 5), ErrorCode::unsupported_order);
  EXPECT_DESOLVE_ERROR(chebyshev_basis(x, 0, 1), ErrorCode::invalid_argument);
}

TEST(LeastSquares, IdentitySystem) {
  const Eigen::VectorXd x = solve_least_squares(Eigen::MatrixXd::Identity(3, 3), Eigen::Vector3d(1, 2, 3));
  EXPECT_NEAR(x[0], 1.0, 1e-15);
  EXPECT_NEAR(x[1], 2.0, 1e-15);
  EXPECT_NEAR(x[2], 3.0, 1e-15);
}

TEST(LeastSquares, MeanOfRepeatedRows) {
  const Eigen::VectorXd x = solve_least_squares(Eigen::MatrixXd::Ones(2, 1), Eigen::Vector2d(1, 3));
  ASSERT_EQ(x.size(), 1);
  EXPECT_NEAR(x[0], 2.0, 1e-15);
}

TEST(LeastSquares, RecoversRandomSolution) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  Eigen::MatrixXd a(40, 10);
  Eigen::VectorXd xi(10);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = n01(rng);
  for (Eigen::Index i = 0; i < xi.size(); ++i) xi[i] = n01(rng);
  const Eigen::VectorXd x = solve_least_squares(a, a * xi);
  EXPECT_LE((x - xi).norm() / xi.norm(), 1e-10);
}

TEST(LeastSquares, MinimumNormForRankDeficient) {
  Eigen::MatrixXd a(3, 2);
  a << 1, 1, 1, 1, 1, 1;
  const LeastSquaresResult r = least_squares(a, Eigen::Vector3d(2, 2, 2));
  EXPECT_EQ(r.rank, 1);
  EXPECT_NEAR(r.solution[0], 1.0, 1e-14);
  EXPECT_NEAR(r.solution[1], 1.0, 1e-14);
}

TEST(LeastSquares, PerturbationNeverImproves) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXd a(25, 6);
    Eigen::VectorXd b(25);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = n01(rng);
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = n01(rng);
    const Eigen::VectorXd x = solve_least_squares(a, b);
    const double best = (a * x - b).norm();
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      for (double s : {-1e-6, 1e-6}) {
        Eigen::VectorXd y = x;
        y[k] += s;
        EXPECT_GE((a * y - b).norm(), best);
      }
    }
  }
}

TEST(LeastSquares, RejectsBadInput) {
  EXPECT_DESOLVE_ERROR(solve_least_squares(Eigen::MatrixXd::Identity(3, 3), Eigen::Vector2d(1, 2)),
                       ErrorCode::invalid_argument);
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_DESOLVE_ERROR(solve_least_squares(a, Eigen::Vector2d(1, 2)), ErrorCode::numeric_error);
}

TEST(SquareSolve, ReportsSingularMatrix) {
  EXPECT_THROW(solve_square(Eigen::MatrixXd::Zero(2, 2), Eigen::Vector2d(1, 1)), NumericError);
  const SquareSolveResult r = solve_square(Eigen::Matrix2d{{2, 0}, {0, 4}}, Eigen::Vector2d(2, 2));
  EXPECT_NEAR(r.solution[0], 1.0, 1e-15);
  EXPECT_NEAR(r.solution[1], 0.5, 1e-15);
  EXPECT_GT(r.condition_estimate, 1.0);
  const SquareSolveResult q =
      solve_square(Eigen::Matrix2d{{2, 0}, {0, 4}}, Eigen::Vector2d(2, 2), SquareMethod::full_pivot_qr);
  EXPECT_NEAR(q.solution[1], 0.5, 1e-15);
}

TEST(Newton, ScalarSquareRoot) {
  std::vector<double> errors;
  const auto residual = [&](const Eigen::VectorXd& x) {
    errors.push_back(std::abs(x[0] - 2.0));
    return Eigen::VectorXd::Constant(1, x[0] * x[0] - 4.0);
  };
  const auto jacobian = [](const Eigen::VectorXd& x) { return Eigen::MatrixXd::Constant(1, 1, 2 * x[0]); };
  const NewtonResult r = newton_solve(residual, jacobian, Eigen::VectorXd::Constant(1, 3.0));
  EXPECT_TRUE(r.report.converged);
  EXPECT_LE(r.report.iterations, 7);
  EXPECT_NEAR(r.x[0], 2.0, 1e-15);
  // e_{k+1} / e_k^2 stays bounded (the exact constant is 1/4).
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    if (errors[k] < 1e-6 || errors[k + 1] == 0.0) break;
    EXPECT_LE(errors[k + 1] / (errors[k] * errors[k]), 0.5);
  }
}

TEST(Newton, LinearResidualConvergesInOneStep) {
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 1, 1, 1;
  const Eigen::Vector3d b(1, 2, 3);
  const auto residual = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return a * x - b; };
  const auto jacobian = [&](const Eigen::VectorXd&) -> Eigen::MatrixXd { return a; };
  const NewtonResult r = newton_solve(residual, jacobian, Eigen::Vector2d(10, -4));
  EXPECT_TRUE(r.report.converged);
  EXPECT_EQ(r.report.iterations, 1);
  EXPECT_NEAR(r.x[0], 1.0, 1e-14);
  EXPECT_NEAR(r.x[1], 2.0, 1e-14);
}

TEST(Newton, ZeroJacobianIsSingular) {
  const auto residual = [](const Eigen::VectorXd& x) { return Eigen::VectorXd::Constant(1, x[0] * x[0] - 4.0); };
  const auto jacobian = [](const Eigen::VectorXd& x) { return Eigen::MatrixXd::Constant(1, 1, 2 * x[0]); };
  EXPECT_DESOLVE_ERROR(newton_solve(residual, jacobian, Eigen::VectorXd::Zero(1)),
                       ErrorCode::singular_jacobian);
}

TEST(Newton, IterationLimitIsNotAnError) {
  const auto residual = [](const Eigen::VectorXd& x) { return Eigen::VectorXd::Constant(1, x[0] * x[0] - 4.0); };
  const auto jacobian = [](const Eigen::VectorXd& x) { return Eigen::MatrixXd::Constant(1, 1, 2 * x[0]); };
  const NewtonResult r = newton_solve(residual, jacobian, Eigen::VectorXd::Constant(1, 100.0), {1e-13, 2});
  EXPECT_FALSE(r.report.converged);
  EXPECT_EQ(r.report.iterations, 2);
}

TEST(SquareNewton, SolvesTwoByTwoSystem) {
  const auto residual = [](const Eigen::VectorXd& x) {
    return Eigen::Vector2d(x[0] * x[0] + x[1] * x[1] - 4.0, x[0] - x[1]).eval();
  };
  const auto jacobian = [](const Eigen::VectorXd& x) {
    Eigen::MatrixXd j(2, 2);
    j << 2 * x[0], 2 * x[1], 1, -1;
    return j;
  };
  const SquareNewtonResult r = newton_solve_square(residual, jacobian, Eigen::Vector2d(1, 2));
  EXPECT_TRUE(r.report.converged);
  EXPECT_NEAR(r.x[0], std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(r.x[1], std::sqrt(2.0), 1e-14);
}

TEST(NelderMead, OneDimensionalQuadratic) {
  const auto f = [](const Eigen::VectorXd& x) { return (x[0] - 2) * (x[0] - 2); };
  const SimplexResult r = nelder_mead_minimize(f, Eigen::VectorXd::Zero(1));
  EXPECT_NEAR(r.x[0], 2.0, 1e-6);
  EXPECT_LE(r.evaluations, 400);
}

TEST(NelderMead, AnisotropicBowl) {
  const auto f = [](const Eigen::VectorXd& x) { return x[0] * x[0] + 10 * x[1] * x[1]; };
  const SimplexResult r = nelder_mead_minimize(f, Eigen::Vector2d(3, 3));
  EXPECT_NEAR(r.x[0], 0.0, 1e-5);
  EXPECT_NEAR(r.x[1], 0.0, 1e-5);
}

TEST(NelderMead, RejectsNonFiniteStart) {
  const auto f = [](const Eigen::VectorXd& x) { return std::log(x[0]); };
  EXPECT_DESOLVE_ERROR(nelder_mead_minimize(f, Eigen::VectorXd::Constant(1, -1.0)),
                       ErrorCode::invalid_argument);
}

TEST(RbfKernel, ZeroSeparation) {
  for (double sigma : {0.1, 1.0, 7.0}) {
    for (double t : {-2.0, 0.0, 0.3}) {
      EXPECT_EQ(rbf_partial(t, t, 0, 0, sigma), 1.0);
      EXPECT_EQ(rbf_partial(t, t, 1, 0, sigma), 0.0);
    }
  }
}

TEST(RbfKernel, ClosedFormValues) {
  EXPECT_NEAR(rbf_partial(0.0, 1.0, 0, 0, 1.0), std::exp(-1.0), 1e-16);
  const std::vector<double> t = {0.25};
  const KernelBlock b = rbf_kernel_block(t, t, 2.0);
  EXPECT_NEAR(b.K11(0, 0), 0.5, 1e-15);
}

TEST(RbfKernel, BlockFormulas) {
  const std::vector<double> ti = {0.0, 0.3, 0.9};
  const std::vector<double> tj = {0.1, 0.5};
  const double s = 0.7;
  const KernelBlock b = rbf_kernel_block(ti, tj, s);
  for (std::size_t i = 0; i < ti.size(); ++i) {
    for (std::size_t j = 0; j < tj.size(); ++j) {
      const double d = ti[i] - tj[j];
      const double k = std::exp(-d * d / (s * s));
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      EXPECT_NEAR(b.K(ii, jj), k, 1e-15);
      EXPECT_NEAR(b.K1(ii, jj), -2 * d / (s * s) * k, 1e-14);
      EXPECT_NEAR(b.K1T(ii, jj), 2 * d / (s * s) * k, 1e-14);
      EXPECT_NEAR(b.K11(ii, jj), (2 / (s * s) - 4 * d * d / std::pow(s, 4)) * k, 1e-13);
      EXPECT_EQ(b.K1(ii, jj), -b.K1T(ii, jj));
    }
  }
}

TEST(RbfKernel, SymmetricInArguments) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 50; ++k) {
    const double a = u(rng);
    const double b = u(rng);
    EXPECT_EQ(rbf_partial(a, b, 0, 0, 0.8), rbf_partial(b, a, 0, 0, 0.8));
    EXPECT_NEAR(rbf_partial(a, b, 1, 0, 0.8), -rbf_partial(a, b, 0, 1, 0.8), 1e-15);
  }
}

TEST(RbfKernel, PartialsMatchFiniteDifferences) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> point(-1.0, 1.0);
  std::uniform_real_distribution<double> log_sigma(std::log(0.1), std::log(10.0));
  for (int sample = 0; sample < 100; ++sample) {
    const double a = point(rng);
    const double b = point(rng);
    const double sigma = std::exp(log_sigma(rng));
    for (int p = 0; p <= kMaxKernelOrder1D; ++p) {
      for (int q = 0; q <= kMaxKernelOrder1D; ++q) {
        if (p == 0) continue;
        const double h = fd_step(a);
        const double fd = (rbf_partial(a + h, b, p - 1, q, sigma) - rbf_partial(a - h, b, p - 1, q, sigma)) / (2 * h);
        const double exact = rbf_partial(a, b, p, q, sigma);
        const double scale = std::max(std::abs(exact), std::pow(sigma, -(p + q)));
        EXPECT_LE(std::abs(fd - exact), 1e-6 * scale) << "p=" << p << " q=" << q << " sigma=" << sigma;
      }
    }
  }
}

TEST(RbfKernel, TwoDimensionalPartialsMatchFiniteDifferences) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> point(0.0, 1.0);
  std::uniform_real_distribution<double> log_sigma(std::log(0.1), std::log(10.0));
  for (int sample = 0; sample < 100; ++sample) {
    const Point2 a{point(rng), point(rng)};
    const Point2 b{point(rng), point(rng)};
    const double sigma = std::exp(log_sigma(rng));
    for (int x1 = 0; x1 <= 2; ++x1) {
      for (int y1 = 0; x1 + y1 <= 2; ++y1) {
        for (int x2 = 0; x2 <= 2; ++x2) {
          for (int y2 = 0; x2 + y2 <= 2; ++y2) {
            if (x1 + y1 == 0) continue;
            // Differentiate the lower-order partial along the first argument.
            PartialOrder2D lower{x1, y1, x2, y2};
            const bool along_x = x1 > 0;
            if (along_x) --lower.x1; else --lower.y1;
            const double h = 1e-5;
            const Point2 ap = along_x ? Point2{a.x + h, a.y} : Point2{a.x, a.y + h};
            const Point2 am = along_x ? Point2{a.x - h, a.y} : Point2{a.x, a.y - h};
            const double fd = (rbf_partial_2d(ap, b, lower, sigma) - rbf_partial_2d(am, b, lower, sigma)) / (2 * h);
            const double exact = rbf_partial_2d(a, b, {x1, y1, x2, y2}, sigma);
            const double scale = std::max(std::abs(exact), std::pow(sigma, -(x1 + y1 + x2 + y2)));
            EXPECT_LE(std::abs(fd - exact), 1e-6 * scale);
          }
        }
      }
    }
  }
}

TEST(RbfKernel, TwoDimensionalSpecialValues) {
  const Point2 p{0.3, 0.8};
  EXPECT_EQ(rbf_partial_2d(p, p, {}, 0.5), 1.0);
  EXPECT_EQ(rbf_partial_2d(p, p, {1, 0, 0, 0}, 0.5), 0.0);
  EXPECT_NEAR(rbf_partial_2d(p, p, {2, 0, 2, 0}, 1.0), 12.0, 1e-12);
  EXPECT_DESOLVE_ERROR(rbf_partial_2d(p, p, {3, 0, 0, 0}, 1.0), ErrorCode::unsupported_order);
  EXPECT_DESOLVE_ERROR(rbf_partial_2d(p, p, {1, 1, 1, 2}, 1.0), ErrorCode::unsupported_order);
}

TEST(RbfKernel, TwoDimensionalBlockMatchesPointwise) {
  const std::vector<Point2> pi = {{0.1, 0.2}, {0.5, 0.5}};
  const std::vector<Point2> pj = {{0.9, 0.0}, {0.3, 0.7}, {0.5, 0.5}};
  const std::vector<PartialOrder2D> orders = {{}, {2, 0, 0, 2}, {0, 1, 1, 0}};
  const auto blocks = rbf_kernel_2d_block(pi, pj, 0.6, orders);
  for (const PartialOrder2D& o : orders) {
    const Eigen::MatrixXd& m = blocks.at(o);
    for (std::size_t i = 0; i < pi.size(); ++i) {
      for (std::size_t j = 0; j < pj.size(); ++j) {
        EXPECT_EQ(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), rbf_partial_2d(pi[i], pj[j], o, 0.6));
      }
    }
  }
}

TEST(RbfKernel, GramIsPositiveSemidefinite) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (double sigma : {0.1, 1.0, 10.0}) {
    std::vector<double> t(20);
    for (double& v : t) v = u(rng);
    const KernelBlock b = rbf_kernel_block(t, t, sigma);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b.K);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-10);
  }
}

TEST(RbfKernel, RejectsBadConfiguration) {
  const std::vector<double> t = {0.0};
  EXPECT_DESOLVE_ERROR(rbf_kernel_block(t, t, 0.0), ErrorCode::invalid_argument);
  EXPECT_DESOLVE_ERROR(rbf_kernel_block(t, t, -1.0), ErrorCode::invalid_argument);
  EXPECT_DESOLVE_ERROR((KernelConfig{1.0, 0.0}.validate()), ErrorCode::invalid_argument);
  EXPECT_DESOLVE_ERROR(rbf_partial(0, 0, 5, 0, 1.0), ErrorCode::unsupported_order);
}

TEST(ErrorMetrics, IdenticalVectors) {
  const std::vector<double> y = {1, 2, 3};
  const ErrorMetrics m = error_metrics(y, y);
  EXPECT_EQ(m.mse, 0.0);
  EXPECT_EQ(m.max_abs_error, 0.0);
  EXPECT_EQ(m.n_points, 3);
}

TEST(ErrorMetrics, SimpleArithmetic) {
  const std::vector<double> y = {0, 2};
  const std::vector<double> yhat = {0, 0};
  const ErrorMetrics m = error_metrics(y, yhat);
  EXPECT_EQ(m.mse, 2.0);
  EXPECT_EQ(m.max_abs_error, 2.0);
  EXPECT_LE(m.mse, m.max_abs_error * m.max_abs_error);
}

TEST(ErrorMetrics, RejectsLengthMismatch) {
  const std::vector<double> a = {1, 2};
  const std::vector<double> b = {1};
  EXPECT_DESOLVE_ERROR(error_metrics(a, b), ErrorCode::invalid_argument);
}
