#include "desolve/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "desolve/error.hpp"

namespace desolve {

ErrorMetrics error_metrics(std::span<const double> y_true, std::span<const double> y_hat) {
  if (y_true.size() != y_hat.size()) {
    fail(ErrorCode::invalid_argument, "error metrics: length mismatch");
  }
  if (y_true.empty()) fail(ErrorCode::invalid_argument, "error metrics: empty input");
  ErrorMetrics out;
  out.n_points = static_cast<int>(y_true.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double e = y_true[i] - y_hat[i];
    sum += e * e;
    out.max_abs_error = std::max(out.max_abs_error, std::abs(e));
  }
  out.mse = sum / static_cast<double>(y_true.size());
  return out;
}

}  // namespace desolve
