#pragma once

#include <cstdint>
#include <random>

namespace cantor {

/// Engine for one simulation stream. std::mt19937_64 output is fixed by the
/// standard, so streams are bit-reproducible across platforms.
using Engine = std::mt19937_64;

/// Independent stream for (seed, index), seeded through std::seed_seq.
Engine make_stream(std::uint64_t seed, std::uint64_t index);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(Engine& engine) noexcept;

/// Bernoulli(p) draw; p outside (0, 1) is clamped.
bool bernoulli(Engine& engine, double p) noexcept;

/// Binomial(n, p) draw by geometric skipping between successes, so the cost
/// is proportional to n p rather than n. Does not use std distributions,
/// whose output is implementation-defined.
std::uint64_t binomial(Engine& engine, std::uint64_t n, double p) noexcept;

}  // namespace cantor
