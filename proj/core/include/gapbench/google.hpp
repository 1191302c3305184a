#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gapbench/graph.hpp"

namespace gapbench {

/// Repair applied to rows of P with no out-edges.
enum class DanglingPolicy {
  uniform,    ///< row becomes 1/n everywhere
  self_loop,  ///< row becomes e_i
};

std::string_view to_string(DanglingPolicy policy);
DanglingPolicy parse_dangling_policy(std::string_view name);

struct WeightedEntry {
  Vertex column = 0;
  double weight = 0.0;
};

/// Sparse row-stochastic transition matrix P. Explicit entries are kept in
/// both row-major and column-major CSR so P x and P^T x are row-parallel
/// gathers. Dangling rows stay implicit and are folded in at apply time.
class StochasticOperator {
 public:
  /// P[i][j] = 1 / outdeg(i) for every edge (i, j).
  explicit StochasticOperator(const DirectedGraph& graph,
                              DanglingPolicy policy = DanglingPolicy::uniform);

  /// Arbitrary non-negative rows. An empty row is dangling; any other row
  /// must sum to 1 within 1e-12.
  static StochasticOperator from_rows(std::size_t n,
                                      const std::vector<std::vector<WeightedEntry>>& rows,
                                      DanglingPolicy policy = DanglingPolicy::uniform);

  std::size_t size() const noexcept { return n_; }
  DanglingPolicy policy() const noexcept { return policy_; }
  std::size_t dangling_count() const noexcept { return dangling_.size(); }
  std::size_t nonzero_count() const noexcept { return row_columns_.size(); }

  /// y = P x
  void apply(std::span<const double> x, std::span<double> y) const;
  /// y = P^T x
  void transpose_apply(std::span<const double> x, std::span<double> y) const;

  Eigen::MatrixXd dense() const;

 private:
  StochasticOperator(std::size_t n, DanglingPolicy policy);
  void build(const std::vector<std::vector<WeightedEntry>>& rows);

  std::size_t n_;
  DanglingPolicy policy_;
  std::vector<std::size_t> row_offsets_;
  std::vector<Vertex> row_columns_;
  std::vector<double> row_weights_;
  std::vector<std::size_t> col_offsets_;
  std::vector<Vertex> col_rows_;
  std::vector<double> col_weights_;
  std::vector<Vertex> dangling_;
  std::vector<char> is_dangling_;
};

/// G = alpha P^T + (1 - alpha) n^-1 1 1^T, applied in O(n + m) without ever
/// forming the rank-one term. Copies share the underlying P.
class GoogleOperator {
 public:
  /// Throws InvalidInput unless alpha is in [0, 1).
  GoogleOperator(StochasticOperator transition, double alpha);
  GoogleOperator(std::shared_ptr<const StochasticOperator> transition, double alpha);

  std::size_t size() const noexcept { return transition_->size(); }
  double alpha() const noexcept { return alpha_; }
  const StochasticOperator& transition() const noexcept { return *transition_; }
  std::shared_ptr<const StochasticOperator> shared_transition() const { return transition_; }

  /// y = G x
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;

  /// y = G^T x
  void transpose_apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> transpose_apply(std::span<const double> x) const;

 private:
  std::shared_ptr<const StochasticOperator> transition_;
  double alpha_;
};

/// Largest n for which dense paths are allowed. Defaults to 2048 and is
/// overridden by the GAPBENCH_DENSE_THRESHOLD environment variable.
std::size_t dense_threshold();

/// Dense G. Throws InvalidInput when n exceeds `threshold`.
Eigen::MatrixXd materialize_dense(const GoogleOperator& google,
                                  std::size_t threshold = dense_threshold());

}  // namespace gapbench
