#include "desolve/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "desolve/error.hpp"

namespace desolve {

namespace {

struct Vertex {
  Eigen::VectorXd x;
  double f;
};

}  // namespace

SimplexResult nelder_mead_minimize(const ObjectiveFn& objective, const Eigen::VectorXd& x0,
                                   double tol, int max_evals) {
  const Eigen::Index n = x0.size();
  if (n < 1) fail(ErrorCode::invalid_argument, "simplex: empty start point");

  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    const double v = objective(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  const double f0 = objective(x0);
  ++evals;
  if (!std::isfinite(f0)) fail(ErrorCode::invalid_argument, "simplex: objective not finite at x0");

  std::vector<Vertex> simplex;
  simplex.push_back({x0, f0});
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd x = x0;
    x(i) = x(i) != 0.0 ? 1.05 * x(i) : 0.00025;
    simplex.push_back({x, eval(x)});
  }

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  auto diameter = [&] {
    double d = 0.0;
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      d = std::max(d, (simplex[i].x - simplex[0].x).lpNorm<Eigen::Infinity>());
    }
    return d;
  };

  std::stable_sort(simplex.begin(), simplex.end(), by_value);
  while (evals < max_evals && diameter() >= tol) {
    Vertex& worst = simplex.back();
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i + 1 < simplex.size(); ++i) centroid += simplex[i].x;
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd xr = centroid + (centroid - worst.x);
    const double fr = eval(xr);
    if (fr < simplex.front().f) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - worst.x);
      const double fe = eval(xe);
      worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < simplex[simplex.size() - 2].f) {
      worst = {xr, fr};
    } else {
      const bool outside = fr < worst.f;
      const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                         : Eigen::VectorXd(centroid + 0.5 * (worst.x - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : worst.f)) {
        worst = {xc, fc};
      } else {
        for (std::size_t i = 1; i < simplex.size(); ++i) {
          simplex[i].x = simplex[0].x + 0.5 * (simplex[i].x - simplex[0].x);
          simplex[i].f = eval(simplex[i].x);
        }
      }
    }
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
  }
  return {simplex.front().x, simplex.front().f, evals};
}

}  // namespace desolve
