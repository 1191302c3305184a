#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace gapbench {

using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

struct LanczosOptions {
  /// Stop once |beta_k * z_k| (the Ritz residual norm) drops below this.
  double tolerance = 1e-10;
  /// Krylov dimension cap; 0 means the full dimension of the search space.
  std::size_t max_steps = 0;
  std::uint64_t seed = 0x4c616e637a6f73ULL;
};

struct RitzPair {
  double value = 0.0;
  std::vector<double> vector;
  double residual_estimate = 0.0;
  std::size_t steps = 0;
  bool converged = false;
};

/// Largest eigenpair of the symmetric operator `op` restricted to the
/// orthogonal complement of `deflate` (an orthonormal set, possibly empty).
/// Lanczos with full reorthogonalization against both the Krylov basis and
/// the deflation set. An invariant subspace (beta ~ 0) ends the run as
/// converged since the Ritz values are then exact.
RitzPair lanczos_largest(const LinearOperator& op, std::size_t n,
                         std::span<const std::vector<double>> deflate,
                         const LanczosOptions& options = {});

}  // namespace gapbench
