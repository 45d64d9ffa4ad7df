#include "desolve/chebyshev.hpp"

#include <cmath>
#include <string>

#include "desolve/error.hpp"

namespace desolve {

BasisMatrix chebyshev_basis(std::span<const double> x, int m, int max_deriv) {
  if (m < 1) {
    fail(ErrorCode::invalid_argument, "basis needs m >= 1");
  }
  if (max_deriv < 0 || max_deriv > kMaxBasisDerivative) {
    fail(ErrorCode::unsupported_order,
         "Chebyshev derivative order " + std::to_string(max_deriv) + " exceeds 4");
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  std::vector<Eigen::MatrixXd> orders(static_cast<std::size_t>(max_deriv) + 1,
                                      Eigen::MatrixXd::Zero(n, m));

  // T_{j+1}^{(k)} = 2 k T_j^{(k-1)} + 2 x T_j^{(k)} - T_{j-1}^{(k)}
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    for (int k = 0; k <= max_deriv; ++k) {
      auto& d = orders[static_cast<std::size_t>(k)];
      d(i, 0) = (k == 0) ? 1.0 : 0.0;
      if (m == 1) {
        continue;
      }
      d(i, 1) = (k == 0) ? xi : (k == 1 ? 1.0 : 0.0);
      for (int j = 1; j + 1 < m; ++j) {
        double next = 2.0 * xi * d(i, j) - d(i, j - 1);
        if (k > 0) {
          next += 2.0 * k * orders[static_cast<std::size_t>(k - 1)](i, j);
        }
        d(i, j + 1) = next;
      }
    }
  }
  return BasisMatrix(std::move(orders));
}

BasisMatrix chebyshev_basis(const CollocationGrid& grid, int m, int max_deriv) {
  return chebyshev_basis(std::span<const double>(grid.x_points), m, max_deriv);
}

Eigen::RowVectorXd chebyshev_row(double x, int m, int deriv) {
  const double pt[1] = {x};
  return chebyshev_basis(std::span<const double>(pt, 1), m, deriv).order(deriv).row(0);
}

}  // namespace desolve
