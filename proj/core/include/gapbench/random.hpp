#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace gapbench {

// The standard distributions are implementation-defined, so draws are done by
// hand on top of mt19937_64 to keep seeded output identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal via Box-Muller.
  double normal();

  /// Fills `out` with normals and scales it to unit 2-norm.
  void unit_vector(std::span<double> out);

 private:
  std::mt19937_64 engine_;
};

}  // namespace gapbench
