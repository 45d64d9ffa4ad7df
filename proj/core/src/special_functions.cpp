#include "desolve/special_functions.hpp"

#include <cmath>

#include "desolve/error.hpp"

namespace desolve {

double gamma_fn(double z) {
  if (!(z > 0.0)) fail(ErrorCode::domain_error, "gamma_fn requires a positive argument");
  return std::tgamma(z);
}

double bessel_series(double nu, double z) {
  if (!(nu > -1.0)) fail(ErrorCode::domain_error, "bessel series requires nu > -1");
  if (!(z >= 0.0)) fail(ErrorCode::domain_error, "bessel series requires z >= 0");
  const double q = -z * z / 4.0;
  double term = 1.0 / gamma_fn(nu + 1.0);
  double sum = term;
  for (int k = 1; k <= 60; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) return sum;
  }
  fail(ErrorCode::numeric_error, "bessel series did not converge within 60 terms");
}

double bessel_j(double nu, double z) {
  const double s = bessel_series(nu, z);
  if (z == 0.0) {
    if (nu == 0.0) return s;
    if (nu > 0.0) return 0.0;
    fail(ErrorCode::domain_error, "bessel_j is unbounded at z = 0 for negative order");
  }
  return std::pow(z / 2.0, nu) * s;
}

}  // namespace desolve
