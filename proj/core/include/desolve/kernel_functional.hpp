#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "desolve/error.hpp"
#include "desolve/kernel.hpp"

namespace desolve {

/// One summand of a batch of n linear functionals of the feature map:
/// functional i contributes coef[i] * phi^(order)(points[i]).
struct FeatureTerm1D {
  Eigen::VectorXd coef;
  std::vector<double> points;
  int order = 0;
};

/// A batch of n functionals, each the sum of the listed terms.
using Functional1D = std::vector<FeatureTerm1D>;

struct FeatureTerm2D {
  Eigen::VectorXd coef;
  std::vector<Point2> points;
  int order_x = 0;
  int order_y = 0;
};

using Functional2D = std::vector<FeatureTerm2D>;

Eigen::Index functional_size(const Functional1D& f);
Eigen::Index functional_size(const Functional2D& f);

/// Gram matrix G(i, j) = <F_i, G_j> in feature space, realized through the
/// kernel partials.
Eigen::MatrixXd feature_gram(const Functional1D& f, const Functional1D& g, const Kernel1D& kernel);
Eigen::MatrixXd feature_gram(const Functional2D& f, const Functional2D& g, const Kernel2D& kernel);

/// phi^(order)(t) for each t.
Functional1D point_functional(std::span<const double> points, int order = 0);
Functional2D point_functional(std::span<const Point2> points, int order_x = 0, int order_y = 0);

/// Concatenate term lists of equally sized batches.
Functional1D operator+(Functional1D a, const Functional1D& b);
Functional2D operator+(Functional2D a, const Functional2D& b);

/// A function in the kernel's feature space written as sum_b F_b^T c_b, where
/// each F_b is a batch of functionals with coefficient vector c_b. Evaluating
/// it against a probe functional P gives sum_b gram(F_b, P)^T c_b.
template <typename Functional, typename Kernel>
class KernelExpansion {
 public:
  explicit KernelExpansion(std::shared_ptr<const Kernel> kernel) : kernel_(std::move(kernel)) {}

  void add(Functional f, Eigen::VectorXd coef) {
    if (functional_size(f) != coef.size()) {
      fail(ErrorCode::invalid_argument, "expansion block and coefficients differ in size");
    }
    blocks_.emplace_back(std::move(f), std::move(coef));
  }

  Eigen::VectorXd apply(const Functional& probe) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(functional_size(probe));
    for (const auto& [f, coef] : blocks_) out += feature_gram(f, probe, *kernel_).transpose() * coef;
    return out;
  }

  const Kernel& kernel() const { return *kernel_; }
  std::shared_ptr<const Kernel> kernel_ptr() const { return kernel_; }

 private:
  std::shared_ptr<const Kernel> kernel_;
  std::vector<std::pair<Functional, Eigen::VectorXd>> blocks_;
};

using KernelExpansion1D = KernelExpansion<Functional1D, Kernel1D>;
using KernelExpansion2D = KernelExpansion<Functional2D, Kernel2D>;

}  // namespace desolve
