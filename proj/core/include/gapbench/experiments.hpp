#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gapbench/google.hpp"
#include "gapbench/graph.hpp"
#include "gapbench/spectra.hpp"

namespace gapbench {

// --- Power-law fitting -----------------------------------------------------

struct ScalingPoint {
  double n = 0.0;
  double y = 0.0;
};

/// y ~ prefactor * n^exponent, fitted by least squares on (ln n, ln y).
struct ScalingFit {
  std::vector<ScalingPoint> points;
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
  std::vector<double> log_residuals;  ///< ln y_i - ln(fit at n_i)

  double max_abs_log_residual() const;
};

/// Throws InvalidInput for fewer than 3 points, non-positive values, or all
/// n equal. A perfectly flat y gives r_squared = 1.
ScalingFit fit_power_law(std::span<const ScalingPoint> points);

// --- Gap scaling studies ---------------------------------------------------

struct GapMeasurement {
  double alpha = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double delta = 0.0;
  double s_star = 0.0;
  bool degraded = false;

  double delta_inverse() const { return 1.0 / delta; }
};

struct WorstCaseScaling {
  double alpha = 0.0;
  std::vector<GapMeasurement> measurements;
  std::optional<ScalingFit> fit;
  /// fit->prefactor * (1 - alpha)^2, the constant in front of (1-alpha)^-2 n.
  double rescaled_prefactor = 0.0;
  std::string diagnostic;  ///< why `fit` is empty, if it is
};

/// For each alpha, min_gap on worst_case_graph(n) for every n and a power
/// law through (n, 1/delta). Each n must be >= 8 with at least 3 distinct
/// sizes; alpha in [0, 1). A gap that does not move with n (alpha = 0) is
/// reported with a diagnostic instead of a fit.
std::vector<WorstCaseScaling> worst_case_scaling(std::span<const double> alphas,
                                                 std::span<const std::size_t> ns,
                                                 const GapOptions& options = {});

struct WwwScaling {
  ScaleFreeParams params;
  double alpha = 0.0;
  DanglingPolicy policy = DanglingPolicy::uniform;
  std::vector<GapMeasurement> measurements;  ///< every (n, seed) run
  std::vector<ScalingPoint> medians;         ///< median 1/delta per n
  ScalingFit fit;
};

/// Scale-free graphs at each n with seeds base_seed .. base_seed + seeds - 1,
/// median 1/delta per n, then a power law through the medians. Needs at
/// least 3 sizes and one seed.
WwwScaling www_scaling(const ScaleFreeParams& params, std::span<const std::size_t> ns,
                       std::size_t seeds_per_n, double alpha, const GapOptions& options = {},
                       std::uint64_t base_seed = 1,
                       DanglingPolicy policy = DanglingPolicy::uniform);

// --- Adversarial search over deterministic P -------------------------------

enum class SearchStrategy { exhaustive, hill_climb };

std::string_view to_string(SearchStrategy strategy);

/// A deterministic transition matrix: row i is e_{targets[i]}.
struct Candidate {
  std::vector<Vertex> targets;
  double delta = 0.0;
};

DirectedGraph candidate_graph(std::span<const Vertex> targets);

/// Row targets of worst_case_graph(n).
std::vector<Vertex> worst_case_targets(std::size_t n);

struct AdversaryOptions {
  SearchStrategy strategy = SearchStrategy::exhaustive;
  /// Hill-climb: total gap evaluations shared across all restarts.
  std::size_t budget = 2000;
  /// Hill-climb: extra runs from random starts after the first.
  std::size_t restarts = 0;
  std::uint64_t seed = 1;
  /// Hill-climb: first run starts here; random when empty.
  std::optional<std::vector<Vertex>> start;
  GapOptions gap;
};

/// Largest n allowed for exhaustive search (n^n candidates).
inline constexpr std::size_t kExhaustiveLimit = 5;

struct AdversarialResult {
  std::size_t n = 0;
  double alpha = 0.0;
  SearchStrategy strategy = SearchStrategy::exhaustive;
  /// Exhaustive: every candidate in lexicographic order. Hill-climb: each
  /// run's start followed by its accepted moves.
  std::vector<Candidate> candidates;
  Candidate best;
  std::size_t evaluations = 0;
  bool budget_exhausted = false;
  /// Hill-climb: some accepted move lowered delta below the first start.
  bool improved_on_start = false;
  /// Worst-case delta and whether `best` matches it up to relabeling (same
  /// sorted in-degree profile, delta within 1e-10).
  double worst_case_delta = 0.0;
  bool worst_case_equivalent = false;

  StochasticOperator best_operator() const;
};

/// Exhaustive enumeration (n <= kExhaustiveLimit) or single-row-move
/// hill-climbing over deterministic P. Throws InvalidInput on a guard
/// violation.
AdversarialResult adversarial_search(std::size_t n, double alpha, const AdversaryOptions& options);

/// Minimum and maximum delta over random dense row-stochastic P with
/// exponential weights. A sanity sweep around the deterministic optimum.
struct SweepResult {
  std::size_t samples = 0;
  double min_delta = 0.0;
  double max_delta = 0.0;
};

SweepResult random_stochastic_sweep(std::size_t n, double alpha, std::size_t samples,
                                    std::uint64_t seed, const GapOptions& options = {});

// --- Runtime-bound report --------------------------------------------------

/// Adiabatic runtime proxy delta^-b (ln 1/eps)^a. The best case is a = b = 1.
struct RuntimeModel {
  double a_exponent = 1.0;
  double b_exponent = 1.0;
};

struct RuntimeReport {
  std::size_t n = 0;
  double alpha = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  RuntimeModel model;
  std::size_t classical_iterations = 0;  ///< max(1, ceil(ln eps / ln alpha))
  double quantum_proxy = 0.0;            ///< delta^-b (ln 1/eps)^a
  double worst_case_proxy = 0.0;         ///< 0.5 (1 - alpha)^-2 n ln(1/eps)
  double quantum_over_classical = 0.0;
  double worst_case_over_classical = 0.0;
};

/// Constant-free arithmetic only. Throws InvalidInput for delta <= 0,
/// epsilon outside (0, 1), alpha outside [0, 1) or non-positive exponents.
RuntimeReport runtime_report(std::size_t n, double alpha, double epsilon, double delta,
                             const RuntimeModel& model = {});

}  // namespace gapbench
