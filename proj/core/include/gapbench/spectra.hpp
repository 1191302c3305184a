#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "gapbench/google.hpp"
#include "gapbench/hamiltonian.hpp"

namespace gapbench {

enum class EigenMethod { dense, iterative };

std::string_view to_string(EigenMethod method);
EigenMethod parse_eigen_method(std::string_view name);

/// Shift for the iterative path: Lanczos converges to the algebraically
/// largest end of kLanczosShift I - H, which is the smallest end of H. The
/// shift is a translation only; ||H|| can exceed it when ||G||_2 > 1.
inline constexpr double kLanczosShift = 6.0;

struct SolverOptions {
  EigenMethod method = EigenMethod::dense;
  /// Residual tolerance ||H v - lambda v||_2 for each returned pair.
  double tolerance = 1e-9;
  std::size_t dense_threshold = gapbench::dense_threshold();
  std::uint64_t seed = 0x6761705f736565ULL;
};

struct SpectrumResult {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double residual1 = 0.0;
  double residual2 = 0.0;
  EigenMethod method = EigenMethod::dense;
  bool converged = false;
  std::vector<double> ground_state;  ///< unit eigenvector for lambda1
};

/// Two smallest eigenvalues of H(s).
///
/// The dense path materializes H and runs a full symmetric eigensolve. The
/// iterative path runs Lanczos on kLanczosShift I - H twice: once for the
/// top pair, then again with that vector deflated, so a degenerate
/// lambda1 == lambda2 still shows up as a zero gap.
///
/// Throws InvalidInput for n < 2 or a dense request above the threshold.
/// Non-convergence is reported through `converged`, never thrown.
SpectrumResult lowest_two_eigen(const HamiltonianOperator& hamiltonian,
                                const SolverOptions& options = {});

/// max(lambda2 - lambda1, 0) at s. Throws NumericalError if the solver did
/// not converge.
double gap_at(const GoogleOperator& google, double s, const SolverOptions& options = {});

struct GapSample {
  double s = 0.0;
  double gap = 0.0;
};

struct GapOptions {
  std::size_t coarse_points = 33;
  double refine_tolerance = 1e-6;  ///< width of the final s-bracket
  SolverOptions solver;
};

struct GapProfile {
  std::vector<GapSample> samples;     ///< the uniform coarse grid, by s
  std::vector<GapSample> refinement;  ///< golden-section probes, in order
  double s_star = 0.0;
  double delta = 0.0;
  bool degraded = false;  ///< some eigensolve did not converge
};

/// Coarse uniform scan of g(s) over [0, 1], then golden-section search on
/// the bracket around the best grid point. delta is the minimum over every
/// sample taken, so refinement can only lower it. Requires coarse_points >= 9.
GapProfile min_gap(const GoogleOperator& google, const GapOptions& options = {});

}  // namespace gapbench
