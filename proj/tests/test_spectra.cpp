#include <cmath>

#include "doctest.h"
#include "gapbench/errors.hpp"
#include "gapbench/lanczos.hpp"
#include "gapbench/pagerank.hpp"
#include "gapbench/parallel.hpp"
#include "gapbench/random.hpp"
#include "gapbench/spectra.hpp"
#include "oracle.hpp"

using namespace gapbench;

namespace {

GoogleOperator make(const DirectedGraph& g, double alpha) {
  return GoogleOperator(StochasticOperator(g), alpha);
}

SolverOptions with(EigenMethod method) {
  SolverOptions o;
  o.method = method;
  return o;
}

}  // namespace

TEST_CASE("lanczos finds the top of a diagonal operator") {
  const std::size_t n = 50;
  LinearOperator diag = [](std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = static_cast<double>(i % 10) * x[i];
  };
  const auto top = lanczos_largest(diag, n, {});
  CHECK(top.converged);
  CHECK(std::abs(top.value - 9.0) <= 1e-10);

  // Deflating one copy of the degenerate top eigenvalue exposes another.
  const std::vector<std::vector<double>> deflate{top.vector};
  // A fresh seed: the old start vector has no 9-component left after deflation.
  LanczosOptions fresh;
  fresh.seed = 17;
  const auto again = lanczos_largest(diag, n, deflate, fresh);
  CHECK(std::abs(again.value - 9.0) <= 1e-10);
  CHECK(std::abs(parallel::dot(top.vector, again.vector)) <= 1e-8);
}

TEST_CASE("lowest_two_eigen analytic cases") {
  // n = 2, P = I: eigenvalues 0 (uniform) and s (1-alpha)^2 + 1 - s.
  for (auto method : {EigenMethod::dense, EigenMethod::iterative}) {
    const auto r = lowest_two_eigen(HamiltonianOperator(make(worst_case_graph(2), 0.85), 0.5), with(method));
    CHECK(r.converged);
    CHECK(std::abs(r.lambda1) <= 1e-12);
    CHECK(std::abs(r.lambda2 - 0.51125) <= 1e-12);
    CHECK(r.method == method);
  }
  // alpha = 0: H(s) = I - 11^T/n with spectrum {0, 1}.
  for (auto method : {EigenMethod::dense, EigenMethod::iterative}) {
    for (double s : {0.0, 0.4, 1.0}) {
      const auto r = lowest_two_eigen(HamiltonianOperator(make(scale_free_graph(40, {}, 5), 0.0), s), with(method));
      CHECK(std::abs(r.lambda1) <= 1e-10);
      CHECK(std::abs(r.lambda2 - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("lowest_two_eigen agrees with the dense oracle on the worst case") {
  const auto g = make(worst_case_graph(16), 0.85);
  const Eigen::MatrixXd dense_g = oracle::google(oracle::transition(worst_case_graph(16)), 0.85);
  for (int i = 0; i <= 10; ++i) {
    const double s = i / 10.0;
    const auto [l1, l2] = oracle::lowest_two(oracle::hamiltonian(dense_g, s));
    for (auto method : {EigenMethod::dense, EigenMethod::iterative}) {
      const auto r = lowest_two_eigen(HamiltonianOperator(g, s), with(method));
      CHECK(r.converged);
      CHECK(r.lambda1 <= r.lambda2);
      CHECK(r.lambda1 >= -1e-9);
      CHECK(std::abs(r.lambda1 - l1) <= 1e-8);
      CHECK(std::abs(r.lambda2 - l2) <= 1e-8);
    }
  }
}

TEST_CASE("dense and iterative paths agree across families") {
  Rng rng(31);
  for (std::uint64_t seed = 0; seed < 9; ++seed) {
    const std::size_t n = 20 + rng.below(120);
    const auto graph = seed % 3 == 0   ? worst_case_graph(n)
                       : seed % 3 == 1 ? scale_free_graph(n, {}, seed)
                                       : uniform_random_graph(n, 1 + rng.below(4 * n), seed);
    const HamiltonianOperator h(make(graph, 0.85), rng.uniform());
    const auto dense = lowest_two_eigen(h, with(EigenMethod::dense));
    const auto iter = lowest_two_eigen(h, with(EigenMethod::iterative));
    CHECK(iter.converged);
    CHECK(iter.residual1 <= 1e-9);
    CHECK(iter.residual2 <= 1e-9);
    CHECK(std::abs(dense.lambda1 - iter.lambda1) <= 1e-7);
    CHECK(std::abs(dense.lambda2 - iter.lambda2) <= 1e-7);
  }
}

TEST_CASE("ground state at s = 1 is the PageRank direction") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto graph = seed % 2 ? scale_free_graph(60, {}, seed) : uniform_random_graph(60, 150, seed);
    const auto g = make(graph, 0.85);
    const auto pr = power_method(g, 1e-13);
    const double pnorm = std::sqrt(parallel::dot(pr.pi, pr.pi));
    for (auto method : {EigenMethod::dense, EigenMethod::iterative}) {
      const auto r = lowest_two_eigen(HamiltonianOperator(g, 1.0), with(method));
      CHECK(std::abs(r.lambda1) <= 1e-9);
      CHECK(std::abs(parallel::dot(r.ground_state, pr.pi)) / pnorm >= 1.0 - 1e-6);
    }
  }
}

TEST_CASE("lowest_two_eigen guards") {
  CHECK_THROWS_AS(lowest_two_eigen(HamiltonianOperator(make(DirectedGraph(1, {}), 0.5), 0.5)), InvalidInput);
  SolverOptions o = with(EigenMethod::dense);
  o.dense_threshold = 8;
  CHECK_THROWS_AS(lowest_two_eigen(HamiltonianOperator(make(worst_case_graph(9), 0.5), 0.5), o), InvalidInput);
  CHECK(parse_eigen_method("lanczos") == EigenMethod::iterative);
  CHECK_THROWS_AS(parse_eigen_method("qr"), InvalidInput);
}

TEST_CASE("gap_at examples") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = make(uniform_random_graph(30, 60 + seed, seed), 0.85);
    CHECK(std::abs(gap_at(g, 0.0) - 1.0) <= 1e-9);
  }
  // n = 2, P = I: g(s) = 1 - s (1 - (1-alpha)^2).
  const auto g2 = make(worst_case_graph(2), 0.85);
  for (int i = 0; i <= 20; ++i) {
    const double s = i / 20.0;
    CHECK(std::abs(gap_at(g2, s) - (1.0 - s * (1.0 - 0.0225))) <= 1e-12);
  }
  const auto g4 = make(worst_case_graph(4), 0.85);
  const double expected = oracle::gap(oracle::google(oracle::transition(worst_case_graph(4)), 0.85), 1.0);
  CHECK(std::abs(gap_at(g4, 1.0) - expected) <= 1e-12);
}

TEST_CASE("min_gap examples") {
  const auto p2 = min_gap(make(worst_case_graph(2), 0.85));
  CHECK(std::abs(p2.delta - 0.0225) <= 1e-10);
  CHECK(p2.s_star == 1.0);
  CHECK(p2.samples.size() == 33);
  CHECK_FALSE(p2.degraded);

  const auto flat = min_gap(make(scale_free_graph(25, {}, 2), 0.0));
  CHECK(std::abs(flat.delta - 1.0) <= 1e-9);
  for (const auto& sample : flat.samples) CHECK(std::abs(sample.gap - 1.0) <= 1e-9);

  // Scaling-law tolerance band around 0.5 (1-alpha)^-2 n = 711.
  const auto p32 = min_gap(make(worst_case_graph(32), 0.85));
  const double dense = oracle::grid_min_gap(oracle::google(oracle::transition(worst_case_graph(32)), 0.85), 33);
  CHECK(std::abs(p32.delta - dense) <= 1e-10);
  const double inverse = 1.0 / p32.delta;
  CHECK(inverse >= 0.35 * 1422.2222);
  CHECK(inverse <= 0.65 * 1422.2222);
  MESSAGE("worst case n=32 alpha=0.85: 1/delta = " << inverse);

  GapOptions too_coarse;
  too_coarse.coarse_points = 5;
  CHECK_THROWS_AS(min_gap(make(worst_case_graph(4), 0.5), too_coarse), InvalidInput);
}

TEST_CASE("refinement never raises delta above the best grid sample") {
  Rng rng(2);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 4 + rng.below(40);
    const auto graph = seed % 2 ? scale_free_graph(n, {}, seed) : uniform_random_graph(n, 2 * n, seed);
    const auto profile = min_gap(make(graph, 0.3 + 0.6 * rng.uniform()));
    double coarse_best = profile.samples.front().gap;
    for (const auto& s : profile.samples) coarse_best = std::min(coarse_best, s.gap);
    CHECK(profile.delta <= coarse_best);
    CHECK(profile.delta > 0.0);
    CHECK(profile.s_star >= 0.0);
    CHECK(profile.s_star <= 1.0);
    CHECK_FALSE(profile.refinement.empty());
  }
}

TEST_CASE("min_gap is identical across thread counts in deterministic mode") {
  const auto g = make(scale_free_graph(80, {}, 6), 0.85);
  parallel::set_deterministic(true);
  parallel::set_thread_count(1);
  const auto serial = min_gap(g);
  parallel::set_thread_count(4);
  const auto threaded = min_gap(g);
  parallel::set_thread_count(1);
  parallel::set_deterministic(false);
  CHECK(serial.delta == threaded.delta);
  CHECK(serial.s_star == threaded.s_star);
  REQUIRE(serial.samples.size() == threaded.samples.size());
  for (std::size_t i = 0; i < serial.samples.size(); ++i) {
    CHECK(serial.samples[i].gap == threaded.samples[i].gap);
  }
}
