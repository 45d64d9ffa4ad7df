#include "desolve/kernel.hpp"

#include <cmath>
#include <string>

#include "desolve/error.hpp"

namespace desolve {

namespace {

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    fail(ErrorCode::invalid_argument, "kernel bandwidth sigma must be positive and finite");
  }
}

double hermite(int n, double z) {
  double h_prev = 1.0;
  if (n == 0) return h_prev;
  double h = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * z * h - 2.0 * k * h_prev;
    h_prev = h;
    h = next;
  }
  return h;
}

double derivative_unchecked(double u, int n, double sigma) {
  const double z = u / sigma;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(sigma, -n) * hermite(n, z) * std::exp(-z * z);
}

}  // namespace

void KernelConfig::validate() const {
  check_sigma(sigma);
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    fail(ErrorCode::invalid_argument, "regularization gamma must be positive and finite");
  }
}

double rbf_derivative(double u, int n, double sigma) {
  check_sigma(sigma);
  if (n < 0 || n > 2 * kMaxKernelOrder1D) {
    fail(ErrorCode::unsupported_order, "kernel derivative order " + std::to_string(n));
  }
  return derivative_unchecked(u, n, sigma);
}

double rbf_partial(double a, double b, int p, int q, double sigma) {
  if (p < 0 || q < 0 || p > kMaxKernelOrder1D || q > kMaxKernelOrder1D) {
    fail(ErrorCode::unsupported_order, "kernel partial order exceeds 4 per argument");
  }
  const double sign = (q % 2 == 0) ? 1.0 : -1.0;
  return sign * rbf_derivative(a - b, p + q, sigma);
}

Eigen::MatrixXd rbf_partial_block(std::span<const double> ti, std::span<const double> tj, int p,
                                  int q, double sigma) {
  check_sigma(sigma);
  if (p < 0 || q < 0 || p > kMaxKernelOrder1D || q > kMaxKernelOrder1D) {
    fail(ErrorCode::unsupported_order, "kernel partial order exceeds 4 per argument");
  }
  const double sign = (q % 2 == 0) ? 1.0 : -1.0;
  Eigen::MatrixXd out(static_cast<Eigen::Index>(ti.size()), static_cast<Eigen::Index>(tj.size()));
  for (std::size_t i = 0; i < ti.size(); ++i) {
    for (std::size_t j = 0; j < tj.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          sign * derivative_unchecked(ti[i] - tj[j], p + q, sigma);
    }
  }
  return out;
}

KernelBlock rbf_kernel_block(std::span<const double> ti, std::span<const double> tj, double sigma) {
  check_sigma(sigma);
  const auto n = static_cast<Eigen::Index>(ti.size());
  const auto m = static_cast<Eigen::Index>(tj.size());
  const double s2 = sigma * sigma;
  KernelBlock out{Eigen::MatrixXd(n, m), Eigen::MatrixXd(n, m), Eigen::MatrixXd(n, m),
                  Eigen::MatrixXd(n, m)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double d = ti[static_cast<std::size_t>(i)] - tj[static_cast<std::size_t>(j)];
      const double k = std::exp(-d * d / s2);
      out.K(i, j) = k;
      out.K1(i, j) = -2.0 * d / s2 * k;
      out.K1T(i, j) = 2.0 * d / s2 * k;
      out.K11(i, j) = (2.0 / s2 - 4.0 * d * d / (s2 * s2)) * k;
    }
  }
  return out;
}

double rbf_partial_2d(Point2 a, Point2 b, PartialOrder2D o, double sigma) {
  check_sigma(sigma);
  if (o.x1 < 0 || o.y1 < 0 || o.x2 < 0 || o.y2 < 0 || o.x1 + o.y1 > 2 || o.x2 + o.y2 > 2) {
    fail(ErrorCode::unsupported_order, "2-D kernel partial exceeds total order 2 per argument");
  }
  const double sign = ((o.x2 + o.y2) % 2 == 0) ? 1.0 : -1.0;
  return sign * derivative_unchecked(a.x - b.x, o.x1 + o.x2, sigma) *
         derivative_unchecked(a.y - b.y, o.y1 + o.y2, sigma);
}

std::map<PartialOrder2D, Eigen::MatrixXd> rbf_kernel_2d_block(std::span<const Point2> pi,
                                                              std::span<const Point2> pj,
                                                              double sigma,
                                                              std::span<const PartialOrder2D> orders) {
  std::map<PartialOrder2D, Eigen::MatrixXd> out;
  for (const PartialOrder2D& o : orders) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(pi.size()), static_cast<Eigen::Index>(pj.size()));
    for (std::size_t i = 0; i < pi.size(); ++i) {
      for (std::size_t j = 0; j < pj.size(); ++j) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            rbf_partial_2d(pi[i], pj[j], o, sigma);
      }
    }
    out.emplace(o, std::move(m));
  }
  return out;
}

RbfKernel1D::RbfKernel1D(double sigma) : sigma_(sigma) { check_sigma(sigma); }

double RbfKernel1D::partial(double a, double b, int p, int q) const {
  return rbf_partial(a, b, p, q, sigma_);
}

RbfKernel2D::RbfKernel2D(double sigma) : sigma_(sigma) { check_sigma(sigma); }

double RbfKernel2D::partial(Point2 a, Point2 b, PartialOrder2D order) const {
  return rbf_partial_2d(a, b, order, sigma_);
}

}  // namespace desolve
