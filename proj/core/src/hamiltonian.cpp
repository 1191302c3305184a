#include "gapbench/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "gapbench/errors.hpp"
#include "gapbench/parallel.hpp"
#include "gapbench/random.hpp"

namespace gapbench {
namespace {

// y = (I - G)^T (I - G) x, using `scratch` for (I - G) x.
void normal_apply(const GoogleOperator& google, std::span<const double> x,
                  std::span<double> scratch, std::span<double> y) {
  const std::size_t n = x.size();
  google.apply(x, scratch);
  for (std::size_t i = 0; i < n; ++i) scratch[i] = x[i] - scratch[i];
  google.transpose_apply(scratch, y);
  for (std::size_t i = 0; i < n; ++i) y[i] = scratch[i] - y[i];
}

}  // namespace

HamiltonianOperator::HamiltonianOperator(GoogleOperator google, double s)
    : google_(std::move(google)), s_(s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw InvalidInput("interpolation parameter s must lie in [0, 1], got " + std::to_string(s));
  }
}

void project_out_uniform(std::span<const double> x, std::span<double> y) {
  const double mean = parallel::sum(x) / static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - mean;
}

void HamiltonianOperator::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = size();
  if (x.size() != n || y.size() != n) {
    throw InvalidInput("dimension mismatch: hamiltonian is " + std::to_string(n) + ", got " +
                       std::to_string(x.size()));
  }
  std::vector<double> projected(n);
  project_out_uniform(x, projected);
  if (s_ == 0.0) {
    std::copy(projected.begin(), projected.end(), y.begin());
    return;
  }
  std::vector<double> scratch(n);
  normal_apply(google_, x, scratch, y);
  for (std::size_t i = 0; i < n; ++i) y[i] = s_ * y[i] + (1.0 - s_) * projected[i];
}

std::vector<double> HamiltonianOperator::apply(std::span<const double> x) const {
  std::vector<double> y(x.size());
  apply(x, y);
  return y;
}

Eigen::MatrixXd materialize_dense(const HamiltonianOperator& hamiltonian, std::size_t threshold) {
  const Eigen::MatrixXd g = materialize_dense(hamiltonian.google(), threshold);
  const auto n = g.rows();
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - g;
  Eigen::MatrixXd projector = Eigen::MatrixXd::Identity(n, n);
  projector.array() -= 1.0 / static_cast<double>(n);
  const double s = hamiltonian.s();
  Eigen::MatrixXd h = s * (a.transpose() * a) + (1.0 - s) * projector;
  // Symmetrize away rounding in the product.
  return 0.5 * (h + h.transpose());
}

NormEstimate lambda_norm(const GoogleOperator& google, const NormOptions& options) {
  const std::size_t n = google.size();
  std::vector<double> x(n);
  std::vector<double> mx(n);
  std::vector<double> scratch(n);
  std::vector<double> projected(n);
  Rng rng(options.seed);
  rng.unit_vector(x);

  auto apply_difference = [&](std::span<const double> in, std::span<double> out) {
    normal_apply(google, in, scratch, out);
    project_out_uniform(in, projected);
    for (std::size_t i = 0; i < n; ++i) out[i] -= projected[i];
  };

  NormEstimate estimate;
  double previous = 0.0;
  double previous_step = 0.0;
  while (estimate.iterations < options.max_iterations) {
    apply_difference(x, mx);
    ++estimate.iterations;
    const double norm = std::sqrt(parallel::dot(mx, mx));
    if (norm == 0.0) {
      // M kills a random vector only when M = 0.
      estimate.converged = true;
      return estimate;
    }
    estimate.value = std::max(estimate.value, norm);
    const double step = norm - previous;
    // The estimates rise geometrically, so the remaining distance to the
    // limit is about step * q / (1 - q) with q the ratio of successive steps.
    if (estimate.iterations > 2 && step <= options.tolerance * norm) {
      const double q = previous_step > 0.0 ? step / previous_step : 0.0;
      const bool at_roundoff = step <= 1e-15 * norm;
      if (at_roundoff || (q < 1.0 && step * q / (1.0 - q) <= options.tolerance * norm)) {
        estimate.converged = true;
        return estimate;
      }
    }
    previous = norm;
    previous_step = step;
    for (std::size_t i = 0; i < n; ++i) x[i] = mx[i] / norm;
  }
  return estimate;
}

}  // namespace gapbench
