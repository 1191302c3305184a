#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gapbench/google.hpp"

namespace gapbench {

/// H(s) = s (I - G)^T (I - G) + (1 - s) (I - n^-1 1 1^T), symmetric PSD.
/// At s = 0 the ground state is the uniform vector; at s = 1 it is the
/// PageRank vector.
class HamiltonianOperator {
 public:
  /// Throws InvalidInput unless s is in [0, 1].
  HamiltonianOperator(GoogleOperator google, double s);

  std::size_t size() const noexcept { return google_.size(); }
  double s() const noexcept { return s_; }
  const GoogleOperator& google() const noexcept { return google_; }

  /// y = H(s) x, two G applies and two G^T applies' worth of work.
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;

 private:
  GoogleOperator google_;
  double s_;
};

/// Dense H(s) built from materialize_dense(G); same threshold rules.
Eigen::MatrixXd materialize_dense(const HamiltonianOperator& hamiltonian,
                                  std::size_t threshold = dense_threshold());

/// y = x - mean(x) 1, the uniform-complement projector. Compensated mean.
void project_out_uniform(std::span<const double> x, std::span<double> y);

struct NormOptions {
  double tolerance = 1e-10;  ///< relative error target, extrapolated from successive changes
  std::size_t max_iterations = 100000;
  std::uint64_t seed = 0x4c616d626461ULL;
};

struct NormEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Lambda = || (I - G)^T (I - G) - I + n^-1 1 1^T ||_2 by power iteration on
/// the implicit difference operator M. The estimate ||M x_k|| for unit x_k is
/// non-decreasing and converges to the spectral radius even when +Lambda and
/// -Lambda are both eigenvalues. A non-converged run returns the best
/// estimate with converged == false.
NormEstimate lambda_norm(const GoogleOperator& google, const NormOptions& options = {});

}  // namespace gapbench
