#include "gapbench/google.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

#include "gapbench/errors.hpp"
#include "gapbench/parallel.hpp"

namespace gapbench {
namespace {

constexpr std::size_t kMatvecGrain = std::size_t{1} << 14;

void check_dims(std::size_t n, std::span<const double> x, std::span<double> y) {
  if (x.size() != n || y.size() != n) {
    throw InvalidInput("dimension mismatch: operator is " + std::to_string(n) +
                       ", got input " + std::to_string(x.size()) + " and output " +
                       std::to_string(y.size()));
  }
}

}  // namespace

std::string_view to_string(DanglingPolicy policy) {
  switch (policy) {
    case DanglingPolicy::uniform:
      return "uniform";
    case DanglingPolicy::self_loop:
      return "self-loop";
  }
  return "unknown";
}

DanglingPolicy parse_dangling_policy(std::string_view name) {
  if (name == "uniform") return DanglingPolicy::uniform;
  if (name == "self-loop" || name == "self_loop") return DanglingPolicy::self_loop;
  throw InvalidInput("unknown dangling policy '" + std::string(name) + "'");
}

StochasticOperator::StochasticOperator(std::size_t n, DanglingPolicy policy)
    : n_(n), policy_(policy) {}

StochasticOperator::StochasticOperator(const DirectedGraph& graph, DanglingPolicy policy)
    : StochasticOperator(graph.vertex_count(), policy) {
  std::vector<std::vector<WeightedEntry>> rows(n_);
  for (const Edge& e : graph.edges()) rows[e.source].push_back({e.target, 0.0});
  for (auto& row : rows) {
    const double w = row.empty() ? 0.0 : 1.0 / static_cast<double>(row.size());
    for (auto& entry : row) entry.weight = w;
  }
  build(rows);
}

StochasticOperator StochasticOperator::from_rows(
    std::size_t n, const std::vector<std::vector<WeightedEntry>>& rows, DanglingPolicy policy) {
  if (n == 0) throw InvalidInput("stochastic operator needs n >= 1");
  if (rows.size() != n) throw InvalidInput("row count does not match n");
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].empty()) continue;
    double total = 0.0;
    for (const auto& entry : rows[i]) {
      if (entry.column >= n) throw InvalidInput("column index out of range in row " + std::to_string(i));
      if (!(entry.weight >= 0.0)) throw InvalidInput("negative weight in row " + std::to_string(i));
      total += entry.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw InvalidInput("row " + std::to_string(i) + " sums to " + std::to_string(total));
    }
  }
  StochasticOperator op(n, policy);
  op.build(rows);
  return op;
}

void StochasticOperator::build(const std::vector<std::vector<WeightedEntry>>& rows) {
  row_offsets_.assign(n_ + 1, 0);
  col_offsets_.assign(n_ + 1, 0);
  is_dangling_.assign(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    row_offsets_[i + 1] = row_offsets_[i] + rows[i].size();
    if (rows[i].empty()) {
      dangling_.push_back(static_cast<Vertex>(i));
      is_dangling_[i] = 1;
    }
    for (const auto& entry : rows[i]) ++col_offsets_[entry.column + 1];
  }
  for (std::size_t j = 0; j < n_; ++j) col_offsets_[j + 1] += col_offsets_[j];

  const std::size_t nnz = row_offsets_[n_];
  row_columns_.resize(nnz);
  row_weights_.resize(nnz);
  col_rows_.resize(nnz);
  col_weights_.resize(nnz);
  std::vector<std::size_t> fill(col_offsets_.begin(), col_offsets_.end() - 1);
  for (std::size_t i = 0; i < n_; ++i) {
    std::size_t k = row_offsets_[i];
    for (const auto& entry : rows[i]) {
      row_columns_[k] = entry.column;
      row_weights_[k] = entry.weight;
      ++k;
      const std::size_t slot = fill[entry.column]++;
      col_rows_[slot] = static_cast<Vertex>(i);
      col_weights_[slot] = entry.weight;
    }
  }
}

void StochasticOperator::apply(std::span<const double> x, std::span<double> y) const {
  check_dims(n_, x, y);
  const double mean = policy_ == DanglingPolicy::uniform && !dangling_.empty()
                          ? parallel::sum(x) / static_cast<double>(n_)
                          : 0.0;
  parallel::for_chunks(n_, kMatvecGrain, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (is_dangling_[i]) {
        y[i] = policy_ == DanglingPolicy::uniform ? mean : x[i];
        continue;
      }
      double acc = 0.0;
      for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
        acc += row_weights_[k] * x[row_columns_[k]];
      }
      y[i] = acc;
    }
  });
}

void StochasticOperator::transpose_apply(std::span<const double> x, std::span<double> y) const {
  check_dims(n_, x, y);
  double spill = 0.0;
  if (policy_ == DanglingPolicy::uniform && !dangling_.empty()) {
    std::vector<double> mass(dangling_.size());
    for (std::size_t k = 0; k < dangling_.size(); ++k) mass[k] = x[dangling_[k]];
    spill = parallel::sum(mass) / static_cast<double>(n_);
  }
  parallel::for_chunks(n_, kMatvecGrain, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      double acc = 0.0;
      for (std::size_t k = col_offsets_[j]; k < col_offsets_[j + 1]; ++k) {
        acc += col_weights_[k] * x[col_rows_[k]];
      }
      if (policy_ == DanglingPolicy::self_loop && is_dangling_[j]) acc += x[j];
      y[j] = acc + spill;
    }
  });
}

Eigen::MatrixXd StochasticOperator::dense() const {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (is_dangling_[i]) {
      if (policy_ == DanglingPolicy::uniform) {
        p.row(i).setConstant(1.0 / static_cast<double>(n_));
      } else {
        p(i, i) = 1.0;
      }
      continue;
    }
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      p(i, row_columns_[k]) += row_weights_[k];
    }
  }
  return p;
}

GoogleOperator::GoogleOperator(StochasticOperator transition, double alpha)
    : GoogleOperator(std::make_shared<const StochasticOperator>(std::move(transition)), alpha) {}

GoogleOperator::GoogleOperator(std::shared_ptr<const StochasticOperator> transition, double alpha)
    : transition_(std::move(transition)), alpha_(alpha) {
  if (!transition_) throw InvalidInput("google operator needs a transition matrix");
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw InvalidInput("damping factor must lie in [0, 1), got " + std::to_string(alpha));
  }
}

void GoogleOperator::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = size();
  check_dims(n, x, y);
  const double teleport = (1.0 - alpha_) * parallel::sum(x) / static_cast<double>(n);
  transition_->transpose_apply(x, y);
  for (std::size_t i = 0; i < n; ++i) y[i] = alpha_ * y[i] + teleport;
}

std::vector<double> GoogleOperator::apply(std::span<const double> x) const {
  std::vector<double> y(x.size());
  apply(x, y);
  return y;
}

void GoogleOperator::transpose_apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = size();
  check_dims(n, x, y);
  const double teleport = (1.0 - alpha_) * parallel::sum(x) / static_cast<double>(n);
  transition_->apply(x, y);
  for (std::size_t i = 0; i < n; ++i) y[i] = alpha_ * y[i] + teleport;
}

std::vector<double> GoogleOperator::transpose_apply(std::span<const double> x) const {
  std::vector<double> y(x.size());
  transpose_apply(x, y);
  return y;
}

std::size_t dense_threshold() {
  constexpr std::size_t kDefault = 2048;
  const char* env = std::getenv("GAPBENCH_DENSE_THRESHOLD");
  if (env == nullptr || *env == '\0') return kDefault;
  std::size_t value = 0;
  const char* end = env + std::char_traits<char>::length(env);
  auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end) {
    throw InvalidInput(std::string("GAPBENCH_DENSE_THRESHOLD is not an integer: '") + env + "'");
  }
  return value;
}

Eigen::MatrixXd materialize_dense(const GoogleOperator& google, std::size_t threshold) {
  const std::size_t n = google.size();
  if (n > threshold) {
    throw InvalidInput("n = " + std::to_string(n) + " exceeds the dense threshold " +
                       std::to_string(threshold) + " (set GAPBENCH_DENSE_THRESHOLD to raise it)");
  }
  const double teleport = (1.0 - google.alpha()) / static_cast<double>(n);
  Eigen::MatrixXd g = google.alpha() * google.transition().dense().transpose();
  g.array() += teleport;
  return g;
}

}  // namespace gapbench
