#pragma once

#include <span>

namespace desolve {

struct ErrorMetrics {
  double mse = 0.0;
  double max_abs_error = 0.0;
  int n_points = 0;
};

ErrorMetrics error_metrics(std::span<const double> y_true, std::span<const double> y_hat);

}  // namespace desolve
