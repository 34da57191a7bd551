#include "cantor/rng.hpp"

#include <cmath>

namespace cantor {

Engine make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Engine(seq);
}

double uniform01(Engine& engine) noexcept {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

bool bernoulli(Engine& engine, double p) noexcept {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform01(engine) < p;
}

std::uint64_t binomial(Engine& engine, std::uint64_t n, double p) noexcept {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  const double log_q = std::log1p(-p);
  std::uint64_t successes = 0;
  std::uint64_t pos = 0;  // trials consumed so far
  for (;;) {
    // Failures before the next success: floor(log U / log(1 - p)), U in (0, 1].
    const double u = 1.0 - uniform01(engine);
    const double skip = std::floor(std::log(u) / log_q);
    if (skip >= static_cast<double>(n - pos)) return successes;
    pos += static_cast<std::uint64_t>(skip) + 1;
    ++successes;
    if (pos >= n) return successes;
  }
}

}  // namespace cantor
