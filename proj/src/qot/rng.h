#pragma once

#include <cstdint>
#include <random>

namespace qot {

// std::mt19937_64 output is fixed by the standard; every draw below goes
// through our own bounded sampling so streams match across standard
// libraries.
using Rng = std::mt19937_64;

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed for sub-stream `stream` of item `index` under `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index,
                          std::uint64_t stream = 0);

// Unbiased integer in [0, bound). bound must be positive.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

bool coin(Rng& rng);

// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(Rng& rng);

}  // namespace qot
