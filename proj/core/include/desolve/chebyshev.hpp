#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "desolve/grid.hpp"

namespace desolve {

inline constexpr int kMaxBasisDerivative = 4;

/// Chebyshev polynomials T_0..T_{m-1} and their x-derivatives sampled at a
/// set of abscissae in [-1, 1]. order(k) is the (points x m) matrix of k-th
/// derivatives; order(0) are the values. Derivatives are with respect to x,
/// multiply by c^k for t-derivatives.
class BasisMatrix {
 public:
  BasisMatrix() = default;
  explicit BasisMatrix(std::vector<Eigen::MatrixXd> orders) : orders_(std::move(orders)) {}

  const Eigen::MatrixXd& values() const { return orders_.front(); }
  const Eigen::MatrixXd& order(int k) const { return orders_.at(static_cast<std::size_t>(k)); }
  int max_derivative() const { return static_cast<int>(orders_.size()) - 1; }
  Eigen::Index points() const { return values().rows(); }
  Eigen::Index functions() const { return values().cols(); }

 private:
  std::vector<Eigen::MatrixXd> orders_;
};

BasisMatrix chebyshev_basis(std::span<const double> x, int m, int max_deriv);
BasisMatrix chebyshev_basis(const CollocationGrid& grid, int m, int max_deriv);

/// Row of T_j^{(k)}(x), j = 0..m-1, for a single abscissa.
Eigen::RowVectorXd chebyshev_row(double x, int m, int deriv);

}  // namespace desolve
