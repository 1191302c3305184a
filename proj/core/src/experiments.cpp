#include "gapbench/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "gapbench/errors.hpp"
#include "gapbench/parallel.hpp"
#include "gapbench/random.hpp"

namespace gapbench {
namespace {

GapMeasurement measure(const DirectedGraph& graph, double alpha, std::uint64_t seed,
                       const GapOptions& options, DanglingPolicy policy) {
  const GoogleOperator google(StochasticOperator(graph, policy), alpha);
  const GapProfile profile = min_gap(google, options);
  return {alpha, graph.vertex_count(), seed, profile.delta, profile.s_star, profile.degraded};
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

void check_sizes(std::span<const std::size_t> ns, std::size_t min_n) {
  const std::set<std::size_t> distinct(ns.begin(), ns.end());
  if (distinct.size() < 3) throw InvalidInput("scaling needs at least 3 distinct sizes");
  for (std::size_t n : ns) {
    if (n < min_n) {
      throw InvalidInput("size " + std::to_string(n) + " is below the minimum " +
                         std::to_string(min_n));
    }
  }
}

std::vector<std::size_t> in_degree_profile(std::span<const Vertex> targets) {
  std::vector<std::size_t> deg(targets.size(), 0);
  for (Vertex t : targets) ++deg[t];
  std::sort(deg.rbegin(), deg.rend());
  return deg;
}

double candidate_delta(std::span<const Vertex> targets, double alpha, const GapOptions& options) {
  const GoogleOperator google(StochasticOperator(candidate_graph(targets)), alpha);
  return min_gap(google, options).delta;
}

}  // namespace

double ScalingFit::max_abs_log_residual() const {
  double worst = 0.0;
  for (double r : log_residuals) worst = std::max(worst, std::abs(r));
  return worst;
}

ScalingFit fit_power_law(std::span<const ScalingPoint> points) {
  if (points.size() < 3) throw InvalidInput("power-law fit needs at least 3 points");
  for (const auto& p : points) {
    if (!(p.n > 0.0) || !(p.y > 0.0) || !std::isfinite(p.n) || !std::isfinite(p.y)) {
      throw InvalidInput("power-law fit needs positive finite values");
    }
  }
  const double count = static_cast<double>(points.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& p : points) {
    mean_x += std::log(p.n);
    mean_y += std::log(p.y);
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& p : points) {
    const double dx = std::log(p.n) - mean_x;
    const double dy = std::log(p.y) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw InvalidInput("power-law fit is degenerate: all n are equal");

  ScalingFit fit;
  fit.points.assign(points.begin(), points.end());
  fit.exponent = sxy / sxx;
  const double intercept = mean_y - fit.exponent * mean_x;
  fit.prefactor = std::exp(intercept);
  double ss_res = 0.0;
  for (const auto& p : points) {
    const double r = std::log(p.y) - (intercept + fit.exponent * std::log(p.n));
    fit.log_residuals.push_back(r);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

std::vector<WorstCaseScaling> worst_case_scaling(std::span<const double> alphas,
                                                 std::span<const std::size_t> ns,
                                                 const GapOptions& options) {
  check_sizes(ns, 8);
  for (double a : alphas) {
    if (!(a >= 0.0 && a < 1.0)) throw InvalidInput("alpha must lie in [0, 1)");
  }
  const std::size_t per_alpha = ns.size();
  const auto runs = parallel::map<GapMeasurement>(alphas.size() * per_alpha, [&](std::size_t k) {
    return measure(worst_case_graph(ns[k % per_alpha]), alphas[k / per_alpha], 0, options,
                   DanglingPolicy::uniform);
  });

  std::vector<WorstCaseScaling> out;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    WorstCaseScaling scaling;
    scaling.alpha = alphas[a];
    scaling.measurements.assign(runs.begin() + a * per_alpha, runs.begin() + (a + 1) * per_alpha);

    const auto [lo, hi] = std::minmax_element(
        scaling.measurements.begin(), scaling.measurements.end(),
        [](const auto& x, const auto& y) { return x.delta < y.delta; });
    if (hi->delta - lo->delta <= 1e-9 * hi->delta) {
      scaling.diagnostic = "gap does not depend on n at alpha = " + std::to_string(alphas[a]) +
                           "; power law inapplicable";
    } else {
      std::vector<ScalingPoint> points;
      for (const auto& m : scaling.measurements) {
        points.push_back({static_cast<double>(m.n), m.delta_inverse()});
      }
      scaling.fit = fit_power_law(points);
      const double damping = 1.0 - alphas[a];
      scaling.rescaled_prefactor = scaling.fit->prefactor * damping * damping;
    }
    out.push_back(std::move(scaling));
  }
  return out;
}

WwwScaling www_scaling(const ScaleFreeParams& params, std::span<const std::size_t> ns,
                       std::size_t seeds_per_n, double alpha, const GapOptions& options,
                       std::uint64_t base_seed, DanglingPolicy policy) {
  check_sizes(ns, 2);
  if (seeds_per_n == 0) throw InvalidInput("www scaling needs at least one seed per size");
  params.validate();

  WwwScaling out;
  out.params = params;
  out.alpha = alpha;
  out.policy = policy;
  out.measurements = parallel::map<GapMeasurement>(ns.size() * seeds_per_n, [&](std::size_t k) {
    const std::size_t n = ns[k / seeds_per_n];
    const std::uint64_t seed = base_seed + k % seeds_per_n;
    return measure(scale_free_graph(n, params, seed), alpha, seed, options, policy);
  });

  for (std::size_t i = 0; i < ns.size(); ++i) {
    std::vector<double> inverses;
    for (std::size_t k = 0; k < seeds_per_n; ++k) {
      inverses.push_back(out.measurements[i * seeds_per_n + k].delta_inverse());
    }
    out.medians.push_back({static_cast<double>(ns[i]), median(std::move(inverses))});
  }
  out.fit = fit_power_law(out.medians);
  return out;
}

std::string_view to_string(SearchStrategy strategy) {
  return strategy == SearchStrategy::exhaustive ? "exhaustive" : "hill-climb";
}

DirectedGraph candidate_graph(std::span<const Vertex> targets) {
  std::vector<Edge> edges;
  edges.reserve(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    edges.push_back({static_cast<Vertex>(i), targets[i]});
  }
  return DirectedGraph(targets.size(), std::move(edges));
}

std::vector<Vertex> worst_case_targets(std::size_t n) {
  const DirectedGraph g = worst_case_graph(n);
  std::vector<Vertex> targets(n);
  for (const Edge& e : g.edges()) targets[e.source] = e.target;
  return targets;
}

StochasticOperator AdversarialResult::best_operator() const {
  return StochasticOperator(candidate_graph(best.targets));
}

AdversarialResult adversarial_search(std::size_t n, double alpha, const AdversaryOptions& options) {
  if (n < 2) throw InvalidInput("adversarial search needs n >= 2");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in [0, 1)");

  AdversarialResult result;
  result.n = n;
  result.alpha = alpha;
  result.strategy = options.strategy;
  const std::vector<Vertex> reference = worst_case_targets(n);
  result.worst_case_delta = candidate_delta(reference, alpha, options.gap);

  if (options.strategy == SearchStrategy::exhaustive) {
    if (n > kExhaustiveLimit) {
      throw InvalidInput("exhaustive search is limited to n <= " +
                         std::to_string(kExhaustiveLimit) + " (n^n candidates)");
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= n;
    result.candidates = parallel::map<Candidate>(total, [&](std::size_t code) {
      // Most significant digit is row 0, so codes run in lexicographic order.
      std::vector<Vertex> targets(n);
      for (std::size_t i = n; i-- > 0;) {
        targets[i] = static_cast<Vertex>(code % n);
        code /= n;
      }
      const double delta = candidate_delta(targets, alpha, options.gap);
      return Candidate{std::move(targets), delta};
    });
    result.evaluations = total;
    result.best = *std::min_element(
        result.candidates.begin(), result.candidates.end(),
        [](const Candidate& a, const Candidate& b) { return a.delta < b.delta; });
  } else {
    if (options.budget == 0) throw InvalidInput("hill-climb needs a positive budget");
    if (options.start && options.start->size() != n) {
      throw InvalidInput("hill-climb start has the wrong length");
    }
    Rng rng(options.seed);
    const std::size_t runs = options.restarts + 1;
    double first_start_delta = 0.0;
    bool have_best = false;

    for (std::size_t run = 0; run < runs && result.evaluations < options.budget; ++run) {
      const std::size_t run_budget =
          run + 1 == runs ? options.budget - result.evaluations : options.budget / runs;
      const std::size_t run_end = result.evaluations + run_budget;

      Candidate current;
      if (run == 0 && options.start) {
        current.targets = *options.start;
        for (Vertex t : current.targets) {
          if (t >= n) throw InvalidInput("hill-climb start has a target out of range");
        }
      } else {
        current.targets.resize(n);
        for (auto& t : current.targets) t = static_cast<Vertex>(rng.below(n));
      }
      current.delta = candidate_delta(current.targets, alpha, options.gap);
      ++result.evaluations;
      if (run == 0) first_start_delta = current.delta;
      result.candidates.push_back(current);
      if (!have_best || current.delta < result.best.delta) {
        result.best = current;
        have_best = true;
      }

      // Visit the n(n-1) single-row moves in random order; a full pass with
      // no acceptance means a local optimum.
      std::vector<std::pair<Vertex, Vertex>> moves;
      bool accepted = true;
      while (accepted && result.evaluations < run_end) {
        accepted = false;
        moves.clear();
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (j != current.targets[i]) moves.emplace_back(i, j);
          }
        }
        for (std::size_t k = moves.size(); k > 1; --k) {
          std::swap(moves[k - 1], moves[rng.below(k)]);
        }
        for (const auto& [row, target] : moves) {
          if (result.evaluations >= run_end) break;
          Candidate trial = current;
          trial.targets[row] = target;
          trial.delta = candidate_delta(trial.targets, alpha, options.gap);
          ++result.evaluations;
          if (trial.delta < current.delta * (1.0 - 1e-9)) {
            current = std::move(trial);
            result.candidates.push_back(current);
            if (current.delta < result.best.delta) result.best = current;
            accepted = true;
            break;
          }
        }
      }
    }
    result.budget_exhausted = result.evaluations >= options.budget;
    result.improved_on_start = result.best.delta < first_start_delta * (1.0 - 1e-9);
  }

  result.worst_case_equivalent =
      in_degree_profile(result.best.targets) == in_degree_profile(reference) &&
      std::abs(result.best.delta - result.worst_case_delta) <= 1e-10;
  return result;
}

SweepResult random_stochastic_sweep(std::size_t n, double alpha, std::size_t samples,
                                    std::uint64_t seed, const GapOptions& options) {
  if (n < 2) throw InvalidInput("sweep needs n >= 2");
  if (samples == 0) throw InvalidInput("sweep needs at least one sample");
  const auto deltas = parallel::map<double>(samples, [&](std::size_t k) {
    Rng rng(seed + k);
    std::vector<std::vector<WeightedEntry>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      double total = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double w = -std::log(1.0 - rng.uniform());
        rows[i].push_back({static_cast<Vertex>(j), w});
        total += w;
      }
      for (auto& e : rows[i]) e.weight /= total;
    }
    const GoogleOperator google(StochasticOperator::from_rows(n, rows), alpha);
    return min_gap(google, options).delta;
  });
  const auto [lo, hi] = std::minmax_element(deltas.begin(), deltas.end());
  return {samples, *lo, *hi};
}

RuntimeReport runtime_report(std::size_t n, double alpha, double epsilon, double delta,
                             const RuntimeModel& model) {
  if (!(delta > 0.0)) throw InvalidInput("runtime report needs delta > 0");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidInput("epsilon must lie in (0, 1)");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in [0, 1)");
  if (!(model.a_exponent > 0.0) || !(model.b_exponent > 0.0)) {
    throw InvalidInput("runtime model exponents must be positive");
  }
  if (n == 0) throw InvalidInput("runtime report needs n >= 1");

  RuntimeReport r;
  r.n = n;
  r.alpha = alpha;
  r.epsilon = epsilon;
  r.delta = delta;
  r.model = model;
  const double log_inv_eps = std::log(1.0 / epsilon);
  r.classical_iterations =
      alpha == 0.0 ? 1
                   : std::max<std::size_t>(
                         1, static_cast<std::size_t>(std::ceil(std::log(epsilon) / std::log(alpha))));
  r.quantum_proxy = std::pow(delta, -model.b_exponent) * std::pow(log_inv_eps, model.a_exponent);
  const double damping = 1.0 - alpha;
  r.worst_case_proxy = 0.5 / (damping * damping) * static_cast<double>(n) * log_inv_eps;
  r.quantum_over_classical = r.quantum_proxy / static_cast<double>(r.classical_iterations);
  r.worst_case_over_classical = r.worst_case_proxy / static_cast<double>(r.classical_iterations);
  return r;
}

}  // namespace gapbench
