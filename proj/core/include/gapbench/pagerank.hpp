#pragma once

#include <cstddef>
#include <vector>

#include "gapbench/errors.hpp"
#include "gapbench/google.hpp"

namespace gapbench {

struct PageRankResult {
  std::vector<double> pi;
  std::size_t iterations = 0;
  double residual = 0.0;  ///< L1 change of the final step
  double epsilon = 0.0;
  double alpha = 0.0;

  std::size_t size() const noexcept { return pi.size(); }
};

/// Thrown by power_method when max_iter steps do not reach epsilon. Carries
/// the last iterate.
class ConvergenceError : public NumericalError {
 public:
  explicit ConvergenceError(PageRankResult partial);
  const PageRankResult& partial() const noexcept { return partial_; }

 private:
  PageRankResult partial_;
};

/// ceil(ln eps / ln alpha) + 2: the step count by which the alpha-contraction
/// drives the L1 update below eps from the uniform start. alpha == 0 gives 2.
std::size_t power_iteration_bound(double alpha, double epsilon);

/// x <- G x from the uniform vector until ||x_{k+1} - x_k||_1 <= epsilon.
/// Throws InvalidInput for epsilon outside (0, 1) and ConvergenceError when
/// max_iter is exhausted.
PageRankResult power_method(const GoogleOperator& google, double epsilon,
                            std::size_t max_iter = 100000);

/// pi_i. Throws InvalidInput when i is out of range.
double get_element(const PageRankResult& result, std::size_t i);

/// sum_i pi1_i pi2_i. Throws InvalidInput on a size mismatch.
double inner_product(const PageRankResult& first, const PageRankResult& second);

}  // namespace gapbench
