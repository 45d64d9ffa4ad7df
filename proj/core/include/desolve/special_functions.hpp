#pragma once

namespace desolve {

/// Gamma function for z > 0.
double gamma_fn(double z);

/// sum_k (-z^2/4)^k / (k! Gamma(nu + k + 1)), so that
/// J_nu(z) = (z/2)^nu * bessel_series(nu, z). Requires nu > -1.
double bessel_series(double nu, double z);

/// Bessel function of the first kind from its power series, z >= 0, nu > -1.
double bessel_j(double nu, double z);

}  // namespace desolve
