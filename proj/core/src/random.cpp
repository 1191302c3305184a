#include "gapbench/random.hpp"

#include <cmath>
#include <numbers>

namespace gapbench {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Reject the partial top bucket so the modulo is unbiased.
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % bound;
}

double Rng::normal() {
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void Rng::unit_vector(std::span<double> out) {
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& v : out) {
      v = normal();
      norm2 += v * v;
    }
  } while (norm2 == 0.0 && !out.empty());
  const double scale = 1.0 / std::sqrt(norm2);
  for (double& v : out) v *= scale;
}

}  // namespace gapbench
