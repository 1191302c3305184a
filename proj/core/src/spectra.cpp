#include "gapbench/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "gapbench/errors.hpp"
#include "gapbench/lanczos.hpp"
#include "gapbench/parallel.hpp"

namespace gapbench {
namespace {

double residual_norm(const HamiltonianOperator& h, std::span<const double> v, double lambda) {
  std::vector<double> hv = h.apply(v);
  for (std::size_t i = 0; i < hv.size(); ++i) hv[i] -= lambda * v[i];
  return std::sqrt(parallel::dot(hv, hv));
}

SpectrumResult dense_lowest_two(const HamiltonianOperator& h, const SolverOptions& options) {
  const Eigen::MatrixXd dense = materialize_dense(h, options.dense_threshold);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");

  SpectrumResult out;
  out.method = EigenMethod::dense;
  out.lambda1 = solver.eigenvalues()[0];
  out.lambda2 = solver.eigenvalues()[1];
  const Eigen::VectorXd v1 = solver.eigenvectors().col(0);
  const Eigen::VectorXd v2 = solver.eigenvectors().col(1);
  out.residual1 = (dense * v1 - out.lambda1 * v1).norm();
  out.residual2 = (dense * v2 - out.lambda2 * v2).norm();
  out.ground_state.assign(v1.data(), v1.data() + v1.size());
  out.converged = out.residual1 <= options.tolerance && out.residual2 <= options.tolerance;
  return out;
}

SpectrumResult iterative_lowest_two(const HamiltonianOperator& h, const SolverOptions& options) {
  const std::size_t n = h.size();
  LinearOperator shifted = [&h](std::span<const double> x, std::span<double> y) {
    h.apply(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = kLanczosShift * x[i] - y[i];
  };

  LanczosOptions lanczos;
  lanczos.tolerance = 0.1 * options.tolerance;
  lanczos.seed = options.seed;
  RitzPair top = lanczos_largest(shifted, n, {}, lanczos);

  lanczos.seed = options.seed + 1;
  const std::vector<std::vector<double>> deflate{top.vector};
  RitzPair second = lanczos_largest(shifted, n, deflate, lanczos);

  SpectrumResult out;
  out.method = EigenMethod::iterative;
  out.lambda1 = kLanczosShift - top.value;
  out.lambda2 = kLanczosShift - second.value;
  if (out.lambda2 < out.lambda1) {
    std::swap(out.lambda1, out.lambda2);
    std::swap(top, second);
  }
  out.residual1 = residual_norm(h, top.vector, out.lambda1);
  out.residual2 = residual_norm(h, second.vector, out.lambda2);
  out.ground_state = std::move(top.vector);
  out.converged = out.residual1 <= options.tolerance && out.residual2 <= options.tolerance;
  return out;
}

struct Probe {
  double gap = 0.0;
  bool converged = false;
};

Probe probe_gap(const GoogleOperator& google, double s, const SolverOptions& options) {
  const SpectrumResult r = lowest_two_eigen(HamiltonianOperator(google, s), options);
  return {std::max(r.lambda2 - r.lambda1, 0.0), r.converged};
}

}  // namespace

std::string_view to_string(EigenMethod method) {
  return method == EigenMethod::dense ? "dense" : "iterative";
}

EigenMethod parse_eigen_method(std::string_view name) {
  if (name == "dense") return EigenMethod::dense;
  if (name == "iterative" || name == "lanczos") return EigenMethod::iterative;
  throw InvalidInput("unknown eigen method '" + std::string(name) + "'");
}

SpectrumResult lowest_two_eigen(const HamiltonianOperator& hamiltonian,
                                const SolverOptions& options) {
  if (hamiltonian.size() < 2) throw InvalidInput("need n >= 2 for two eigenvalues");
  if (options.method == EigenMethod::dense) return dense_lowest_two(hamiltonian, options);
  return iterative_lowest_two(hamiltonian, options);
}

double gap_at(const GoogleOperator& google, double s, const SolverOptions& options) {
  const Probe p = probe_gap(google, s, options);
  if (!p.converged) {
    throw NumericalError("eigensolver did not converge at s = " + std::to_string(s));
  }
  return p.gap;
}

GapProfile min_gap(const GoogleOperator& google, const GapOptions& options) {
  if (options.coarse_points < 9) throw InvalidInput("min_gap needs at least 9 coarse points");
  if (!(options.refine_tolerance > 0.0)) throw InvalidInput("refine tolerance must be positive");

  const std::size_t points = options.coarse_points;
  const auto grid_s = [points](std::size_t i) {
    return static_cast<double>(i) / static_cast<double>(points - 1);
  };
  const auto coarse = parallel::map<Probe>(points, [&](std::size_t i) {
    return probe_gap(google, grid_s(i), options.solver);
  });

  GapProfile profile;
  std::size_t best = 0;
  for (std::size_t i = 0; i < points; ++i) {
    profile.samples.push_back({grid_s(i), coarse[i].gap});
    profile.degraded = profile.degraded || !coarse[i].converged;
    if (coarse[i].gap < coarse[best].gap) best = i;
  }
  profile.s_star = grid_s(best);
  profile.delta = coarse[best].gap;

  auto evaluate = [&](double s) {
    const Probe p = probe_gap(google, s, options.solver);
    profile.degraded = profile.degraded || !p.converged;
    profile.refinement.push_back({s, p.gap});
    if (p.gap < profile.delta) {
      profile.delta = p.gap;
      profile.s_star = s;
    }
    return p.gap;
  };

  // Golden-section search on the neighbours of the best grid point.
  constexpr double kInvPhi = std::numbers::phi - 1.0;
  double lo = grid_s(best == 0 ? 0 : best - 1);
  double hi = grid_s(std::min(best + 1, points - 1));
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = evaluate(c);
  double fd = evaluate(d);
  while (hi - lo >= options.refine_tolerance) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = evaluate(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = evaluate(d);
    }
  }
  return profile;
}

}  // namespace gapbench
