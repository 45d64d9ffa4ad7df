#include "desolve/kernel_functional.hpp"

#include "desolve/error.hpp"

namespace desolve {

namespace {

template <typename Term>
Eigen::Index batch_size(const std::vector<Term>& f) {
  if (f.empty()) fail(ErrorCode::invalid_argument, "functional with no terms");
  const Eigen::Index n = f.front().coef.size();
  for (const Term& t : f) {
    if (t.coef.size() != n || static_cast<Eigen::Index>(t.points.size()) != n) {
      fail(ErrorCode::invalid_argument, "functional terms differ in batch size");
    }
  }
  return n;
}

}  // namespace

Eigen::Index functional_size(const Functional1D& f) { return batch_size(f); }
Eigen::Index functional_size(const Functional2D& f) { return batch_size(f); }

Eigen::MatrixXd feature_gram(const Functional1D& f, const Functional1D& g, const Kernel1D& kernel) {
  const Eigen::Index n = batch_size(f);
  const Eigen::Index m = batch_size(g);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, m);
  for (const FeatureTerm1D& a : f) {
    for (const FeatureTerm1D& b : g) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double ca = a.coef(i);
        if (ca == 0.0) continue;
        for (Eigen::Index j = 0; j < m; ++j) {
          const double cb = b.coef(j);
          if (cb == 0.0) continue;
          out(i, j) += ca * cb *
                       kernel.partial(a.points[static_cast<std::size_t>(i)],
                                      b.points[static_cast<std::size_t>(j)], a.order, b.order);
        }
      }
    }
  }
  return out;
}

Eigen::MatrixXd feature_gram(const Functional2D& f, const Functional2D& g, const Kernel2D& kernel) {
  const Eigen::Index n = batch_size(f);
  const Eigen::Index m = batch_size(g);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, m);
  for (const FeatureTerm2D& a : f) {
    for (const FeatureTerm2D& b : g) {
      const PartialOrder2D order{a.order_x, a.order_y, b.order_x, b.order_y};
      for (Eigen::Index i = 0; i < n; ++i) {
        const double ca = a.coef(i);
        if (ca == 0.0) continue;
        for (Eigen::Index j = 0; j < m; ++j) {
          const double cb = b.coef(j);
          if (cb == 0.0) continue;
          out(i, j) += ca * cb *
                       kernel.partial(a.points[static_cast<std::size_t>(i)],
                                      b.points[static_cast<std::size_t>(j)], order);
        }
      }
    }
  }
  return out;
}

Functional1D point_functional(std::span<const double> points, int order) {
  const auto n = static_cast<Eigen::Index>(points.size());
  return {{Eigen::VectorXd::Ones(n), std::vector<double>(points.begin(), points.end()), order}};
}

Functional2D point_functional(std::span<const Point2> points, int order_x, int order_y) {
  const auto n = static_cast<Eigen::Index>(points.size());
  return {{Eigen::VectorXd::Ones(n), std::vector<Point2>(points.begin(), points.end()), order_x,
           order_y}};
}

Functional1D operator+(Functional1D a, const Functional1D& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Functional2D operator+(Functional2D a, const Functional2D& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace desolve
