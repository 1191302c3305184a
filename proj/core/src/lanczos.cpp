#include "gapbench/lanczos.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "gapbench/errors.hpp"
#include "gapbench/parallel.hpp"
#include "gapbench/random.hpp"

namespace gapbench {
namespace {

void orthogonalize(std::span<double> w, const std::vector<std::vector<double>>& basis,
                   std::span<const std::vector<double>> deflate) {
  // Two passes of classical Gram-Schmidt restore orthogonality to rounding.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& d : deflate) {
      const double c = parallel::dot(d, w);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * d[i];
    }
    for (const auto& v : basis) {
      const double c = parallel::dot(v, w);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * v[i];
    }
  }
}

struct TopRitz {
  double value;
  Eigen::VectorXd coefficients;
};

TopRitz top_ritz(const std::vector<double>& diag, const std::vector<double>& offdiag) {
  const auto k = static_cast<Eigen::Index>(diag.size());
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), k);
  Eigen::VectorXd e(std::max<Eigen::Index>(k - 1, 0));
  for (Eigen::Index i = 0; i + 1 < k; ++i) e[i] = offdiag[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
  return {solver.eigenvalues()[k - 1], solver.eigenvectors().col(k - 1)};
}

}  // namespace

RitzPair lanczos_largest(const LinearOperator& op, std::size_t n,
                         std::span<const std::vector<double>> deflate,
                         const LanczosOptions& options) {
  if (n == 0) throw InvalidInput("lanczos needs a non-empty space");
  if (deflate.size() >= n) throw InvalidInput("deflation set spans the whole space");
  const std::size_t space = n - deflate.size();
  const std::size_t max_steps =
      options.max_steps == 0 ? space : std::min(options.max_steps, space);

  Rng rng(options.seed);
  std::vector<double> v(n);
  rng.unit_vector(v);
  std::vector<std::vector<double>> basis;
  orthogonalize(v, basis, deflate);
  double norm = std::sqrt(parallel::dot(v, v));
  for (double& x : v) x /= norm;

  std::vector<double> diag;
  std::vector<double> offdiag;
  std::vector<double> w(n);
  double scale = 0.0;

  RitzPair result;
  TopRitz ritz{0.0, {}};
  std::size_t next_check = 1;
  for (std::size_t step = 0; step < max_steps; ++step) {
    op(v, w);
    const double a = parallel::dot(v, w);
    diag.push_back(a);
    basis.push_back(v);
    orthogonalize(w, basis, deflate);
    const double b = std::sqrt(parallel::dot(w, w));
    scale = std::max({scale, std::abs(a), b});

    const bool exhausted = step + 1 == max_steps;
    const bool invariant = b <= 1e-12 * std::max(scale, 1.0);
    if (exhausted || invariant || step + 1 >= next_check) {
      ritz = top_ritz(diag, offdiag);
      result.residual_estimate =
          invariant ? 0.0 : std::abs(b * ritz.coefficients[ritz.coefficients.size() - 1]);
      result.steps = step + 1;
      result.converged = invariant || result.residual_estimate <= options.tolerance ||
                         (exhausted && max_steps == space);
      if (result.converged || exhausted) break;
      next_check = step + 1 + std::max<std::size_t>(1, (step + 1) / 8);
    }
    offdiag.push_back(b);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / b;
  }

  result.value = ritz.value;
  result.vector.assign(n, 0.0);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const double c = ritz.coefficients[static_cast<Eigen::Index>(j)];
    for (std::size_t i = 0; i < n; ++i) result.vector[i] += c * basis[j][i];
  }
  const double vnorm = std::sqrt(parallel::dot(result.vector, result.vector));
  for (double& x : result.vector) x /= vnorm;
  return result;
}

}  // namespace gapbench
