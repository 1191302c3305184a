#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gapbench/errors.hpp"
#include "gapbench/experiments.hpp"
#include "oracle.hpp"

using namespace gapbench;

TEST_CASE("fit_power_law recovers exact laws") {
  std::vector<ScalingPoint> linear;
  std::vector<ScalingPoint> sub;
  for (double n : {8.0, 16.0, 32.0, 64.0, 128.0}) {
    linear.push_back({n, 2.0 * n});
    sub.push_back({n, std::pow(n, 0.85)});
  }
  const auto a = fit_power_law(linear);
  CHECK(std::abs(a.exponent - 1.0) <= 1e-12);
  CHECK(std::abs(a.prefactor - 2.0) <= 1e-12);
  CHECK(a.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.max_abs_log_residual() <= 1e-12);

  CHECK(std::abs(fit_power_law(sub).exponent - 0.85) <= 1e-12);
}

TEST_CASE("fit_power_law errors") {
  const std::vector<ScalingPoint> one{{4.0, 2.0}};
  CHECK_THROWS_AS(fit_power_law(one), InvalidInput);
  const std::vector<ScalingPoint> negative{{1.0, 1.0}, {2.0, -1.0}, {3.0, 1.0}};
  CHECK_THROWS_AS(fit_power_law(negative), InvalidInput);
  const std::vector<ScalingPoint> same_n{{4.0, 1.0}, {4.0, 2.0}, {4.0, 3.0}};
  CHECK_THROWS_AS(fit_power_law(same_n), InvalidInput);
}

TEST_CASE("fit_power_law residuals reproduce the inputs") {
  const std::vector<ScalingPoint> noisy{{10, 3.0}, {20, 7.5}, {40, 11.0}, {80, 26.0}};
  const auto fit = fit_power_law(noisy);
  CHECK(fit.r_squared >= 0.0);
  CHECK(fit.r_squared <= 1.0);
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    const double model = fit.prefactor * std::pow(noisy[i].n, fit.exponent);
    CHECK(std::abs(std::log(noisy[i].y) - std::log(model) - fit.log_residuals[i]) <= 1e-12);
  }
}

TEST_CASE("the n = 2 worst case sits on the (1-alpha)^-2 n / 2 line") {
  for (double alpha : {0.3, 0.5, 0.85}) {
    const auto profile = min_gap(GoogleOperator(StochasticOperator(worst_case_graph(2)), alpha));
    const double law = 0.5 / ((1 - alpha) * (1 - alpha)) * 2.0;
    CHECK(std::abs(1.0 / profile.delta - law) <= 1e-8 * law);
  }
}

TEST_CASE("worst_case_scaling at alpha = 0.85") {
  const std::vector<double> alphas{0.85};
  const std::vector<std::size_t> ns{16, 32, 64};
  const auto result = worst_case_scaling(alphas, ns);
  REQUIRE(result.size() == 1);
  REQUIRE(result[0].fit.has_value());
  CHECK(result[0].fit->exponent >= 0.9);
  CHECK(result[0].fit->exponent <= 1.1);
  CHECK(result[0].rescaled_prefactor >= 0.35);
  CHECK(result[0].rescaled_prefactor <= 0.65);
  for (const auto& m : result[0].measurements) CHECK_FALSE(m.degraded);
}

TEST_CASE("worst_case_scaling rejects the flat alpha = 0 law") {
  const std::vector<double> alphas{0.0};
  const std::vector<std::size_t> ns{8, 12, 16};
  const auto result = worst_case_scaling(alphas, ns);
  CHECK_FALSE(result[0].fit.has_value());
  CHECK(result[0].diagnostic.find("inapplicable") != std::string::npos);
  for (const auto& m : result[0].measurements) CHECK(std::abs(m.delta - 1.0) <= 1e-9);

  const std::vector<std::size_t> small{4, 8, 16};
  CHECK_THROWS_AS(worst_case_scaling(alphas, small), InvalidInput);
  const std::vector<std::size_t> two{8, 16};
  CHECK_THROWS_AS(worst_case_scaling(alphas, two), InvalidInput);
}

TEST_CASE("www_scaling is reproducible and tolerates one seed") {
  const std::vector<std::size_t> ns{16, 32, 64};
  GapOptions options;
  options.coarse_points = 9;
  options.refine_tolerance = 1e-3;
  const auto a = www_scaling({}, ns, 3, 0.85, options, 5);
  const auto b = www_scaling({}, ns, 3, 0.85, options, 5);
  CHECK(a.fit.exponent == b.fit.exponent);
  CHECK(a.measurements.size() == 9);
  for (std::size_t i = 0; i < a.measurements.size(); ++i) {
    CHECK(a.measurements[i].delta == b.measurements[i].delta);
  }
  const auto single = www_scaling({}, ns, 1, 0.85, options, 5);
  CHECK(single.medians.size() == 3);
  CHECK(std::isfinite(single.fit.max_abs_log_residual()));
}

TEST_CASE("exhaustive search at n = 3 and n = 4 bottoms out at the worst case") {
  for (std::size_t n : {3, 4}) {
    AdversaryOptions options;
    const auto result = adversarial_search(n, 0.85, options);
    CHECK(result.candidates.size() == (n == 3 ? 27u : 256u));
    CHECK(std::abs(result.best.delta - result.worst_case_delta) <= 1e-10);
    CHECK(result.worst_case_equivalent);

    // Independent check: a fine dense scan over the same candidates.
    const auto& cands = result.candidates;
    const auto oracle_min = std::min_element(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
      return a.delta < b.delta;
    });
    const auto dense = oracle::google(oracle::transition(candidate_graph(oracle_min->targets)), 0.85);
    CHECK(std::abs(oracle::grid_min_gap(dense, 201) - oracle_min->delta) <= 1e-10);
  }
}

TEST_CASE("exhaustive search guard") {
  AdversaryOptions options;
  CHECK_THROWS_AS(adversarial_search(6, 0.85, options), InvalidInput);
}

TEST_CASE("hill-climb from the worst case finds no improvement at n = 16") {
  AdversaryOptions options;
  options.strategy = SearchStrategy::hill_climb;
  options.start = worst_case_targets(16);
  options.budget = 400;
  const auto result = adversarial_search(16, 0.85, options);
  CHECK_FALSE(result.improved_on_start);
  CHECK(std::abs(result.best.delta - result.worst_case_delta) <= 1e-12);
  // 240 single-row moves form a full neighbourhood pass, which ends the run.
  CHECK(result.evaluations == 241);
  CHECK_FALSE(result.budget_exhausted);
}

TEST_CASE("hill-climb from a random start improves and respects the budget") {
  AdversaryOptions options;
  options.strategy = SearchStrategy::hill_climb;
  options.budget = 60;
  options.restarts = 1;
  options.seed = 3;
  const auto result = adversarial_search(8, 0.85, options);
  CHECK(result.evaluations <= 60);
  CHECK(result.best.delta >= result.worst_case_delta - 1e-12);
  CHECK(result.candidates.size() >= 2);
}

TEST_CASE("random stochastic sweep stays above the deterministic optimum") {
  const auto sweep = random_stochastic_sweep(4, 0.85, 40, 1);
  AdversaryOptions options;
  const auto exhaustive = adversarial_search(4, 0.85, options);
  CHECK(sweep.samples == 40);
  CHECK(sweep.min_delta >= exhaustive.best.delta);
  CHECK(sweep.max_delta >= sweep.min_delta);
}

TEST_CASE("runtime_report arithmetic") {
  const auto r = runtime_report(128, 0.5, 0.5, 0.01);
  CHECK(r.classical_iterations == 1);
  CHECK(r.quantum_proxy == doctest::Approx(100.0 * std::log(2.0)));
  CHECK(r.worst_case_proxy == doctest::Approx(0.5 * 4.0 * 128.0 * std::log(2.0)));

  const auto big = runtime_report(128, 0.85, 1e-8, 1.0 / 2068.4);
  CHECK(big.classical_iterations == 114);
  CHECK(big.quantum_over_classical == doctest::Approx(2068.4 * std::log(1e8) / 114.0));
  MESSAGE("quantum/classical at n=128: " << big.quantum_over_classical);

  CHECK_THROWS_AS(runtime_report(4, 0.5, 0.1, 0.0), InvalidInput);
  CHECK_THROWS_AS(runtime_report(4, 0.5, 0.1, 0.1, RuntimeModel{0.0, 1.0}), InvalidInput);
}
