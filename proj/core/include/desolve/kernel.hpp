#pragma once

#include <Eigen/Dense>
#include <compare>
#include <map>
#include <span>
#include <vector>

#include "desolve/grid.hpp"

namespace desolve {

/// RBF bandwidth sigma and LS-SVM regularization gamma.
struct KernelConfig {
  double sigma = 1.0;
  double gamma = 1.0;

  /// Throws invalid-argument unless both are positive and finite.
  void validate() const;
};

inline constexpr int kMaxKernelOrder1D = 4;

/// n-th derivative of k(u) = exp(-u^2 / sigma^2), through the Hermite
/// polynomial identity k^(n)(u) = (-1)^n sigma^-n H_n(u / sigma) k(u).
double rbf_derivative(double u, int n, double sigma);

/// d^p/da^p d^q/db^q of K(a, b) = exp(-(a - b)^2 / sigma^2), with p, q <= 4.
double rbf_partial(double a, double b, int p, int q, double sigma);

/// The four blocks used by the first-order solvers, indexed [i][j]:
/// K = K(ti, tj), K1 = dK/dti, K1T = dK/dtj, K11 = d2K/dti dtj.
struct KernelBlock {
  Eigen::MatrixXd K;
  Eigen::MatrixXd K1;
  Eigen::MatrixXd K1T;
  Eigen::MatrixXd K11;
};

KernelBlock rbf_kernel_block(std::span<const double> ti, std::span<const double> tj, double sigma);

/// Matrix of rbf_partial(ti[i], tj[j], p, q, sigma).
Eigen::MatrixXd rbf_partial_block(std::span<const double> ti, std::span<const double> tj, int p,
                                  int q, double sigma);

/// Derivative orders (x1, y1) on the first argument and (x2, y2) on the second.
struct PartialOrder2D {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;
  auto operator<=>(const PartialOrder2D&) const = default;
};

/// Partial derivative of K(p1, p2) = exp(-|p1 - p2|^2 / sigma^2). Each argument
/// may carry total order at most 2.
double rbf_partial_2d(Point2 a, Point2 b, PartialOrder2D order, double sigma);

std::map<PartialOrder2D, Eigen::MatrixXd> rbf_kernel_2d_block(std::span<const Point2> pi,
                                                              std::span<const Point2> pj,
                                                              double sigma,
                                                              std::span<const PartialOrder2D> orders);

/// Source of kernel partials for the functional assembly. The solvers use the
/// RBF kernels below; any positive semidefinite kernel with the same
/// derivative interface can be substituted.
class Kernel1D {
 public:
  virtual ~Kernel1D() = default;
  virtual double partial(double a, double b, int p, int q) const = 0;
};

class Kernel2D {
 public:
  virtual ~Kernel2D() = default;
  virtual double partial(Point2 a, Point2 b, PartialOrder2D order) const = 0;
};

class RbfKernel1D final : public Kernel1D {
 public:
  explicit RbfKernel1D(double sigma);
  double partial(double a, double b, int p, int q) const override;
  double sigma() const { return sigma_; }

 private:
  double sigma_;
};

class RbfKernel2D final : public Kernel2D {
 public:
  explicit RbfKernel2D(double sigma);
  double partial(Point2 a, Point2 b, PartialOrder2D order) const override;
  double sigma() const { return sigma_; }

 private:
  double sigma_;
};

}  // namespace desolve
