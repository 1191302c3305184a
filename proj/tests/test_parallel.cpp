#include <cmath>
#include <numeric>

#include "doctest.h"
#include "gapbench/errors.hpp"
#include "gapbench/parallel.hpp"
#include "gapbench/random.hpp"

using namespace gapbench;

TEST_CASE("compensated sum beats naive accumulation") {
  std::vector<double> x{1e16, 1.0, -1e16, 1.0};
  CHECK(parallel::sum(x) == 2.0);
}

TEST_CASE("deterministic reductions do not depend on the thread count") {
  Rng rng(1);
  std::vector<double> x(300000);
  for (auto& v : x) v = rng.normal();
  parallel::set_deterministic(true);
  parallel::set_thread_count(1);
  const double one = parallel::sum(x);
  const double dot_one = parallel::dot(x, x);
  parallel::set_thread_count(3);
  CHECK(parallel::sum(x) == one);
  CHECK(parallel::dot(x, x) == dot_one);
  parallel::set_thread_count(1);
  parallel::set_deterministic(false);
}

TEST_CASE("map keeps input order and propagates exceptions") {
  parallel::set_thread_count(4);
  const auto squares = parallel::map<std::size_t>(100, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < 100; ++i) CHECK(squares[i] == i * i);
  CHECK_THROWS_AS(parallel::map<int>(10,
                                     [](std::size_t i) -> int {
                                       if (i == 7) throw InvalidInput("boom");
                                       return 0;
                                     }),
                  InvalidInput);
  parallel::set_thread_count(1);
}

TEST_CASE("rng draws are in range") {
  Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(rng.below(7) < 7);
  }
  std::vector<double> v(10);
  rng.unit_vector(v);
  CHECK(std::abs(std::inner_product(v.begin(), v.end(), v.begin(), 0.0) - 1.0) <= 1e-14);
}
