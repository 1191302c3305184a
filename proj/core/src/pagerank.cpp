#include "gapbench/pagerank.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "gapbench/parallel.hpp"

namespace gapbench {

ConvergenceError::ConvergenceError(PageRankResult partial)
    : NumericalError("power method did not converge in " + std::to_string(partial.iterations) +
                     " iterations (residual " + std::to_string(partial.residual) +
                     ", requested " + std::to_string(partial.epsilon) + ")"),
      partial_(std::move(partial)) {}

std::size_t power_iteration_bound(double alpha, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidInput("epsilon must lie in (0, 1)");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in [0, 1)");
  if (alpha == 0.0) return 2;
  return static_cast<std::size_t>(std::ceil(std::log(epsilon) / std::log(alpha))) + 2;
}

PageRankResult power_method(const GoogleOperator& google, double epsilon, std::size_t max_iter) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidInput("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
  const std::size_t n = google.size();
  PageRankResult result;
  result.epsilon = epsilon;
  result.alpha = google.alpha();
  result.pi.assign(n, 1.0 / static_cast<double>(n));
  result.residual = 2.0;

  std::vector<double> next(n);
  std::vector<double> diff(n);
  while (result.iterations < max_iter) {
    google.apply(result.pi, next);
    for (std::size_t i = 0; i < n; ++i) diff[i] = std::abs(next[i] - result.pi[i]);
    result.pi.swap(next);
    ++result.iterations;
    result.residual = parallel::sum(diff);
    assert(std::abs(parallel::sum(result.pi) - 1.0) < 1e-9);
    if (result.residual <= epsilon) return result;
  }
  throw ConvergenceError(std::move(result));
}

double get_element(const PageRankResult& result, std::size_t i) {
  if (i >= result.pi.size()) {
    throw InvalidInput("vertex " + std::to_string(i) + " out of range for n = " +
                       std::to_string(result.pi.size()));
  }
  return result.pi[i];
}

double inner_product(const PageRankResult& first, const PageRankResult& second) {
  if (first.pi.size() != second.pi.size()) {
    throw InvalidInput("PageRank vectors differ in length: " + std::to_string(first.pi.size()) +
                       " vs " + std::to_string(second.pi.size()));
  }
  return parallel::dot(first.pi, second.pi);
}

}  // namespace gapbench
