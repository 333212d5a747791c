#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace kclab {

// Raw mt19937_64 output is pinned by the standard; uniform_int_distribution
// is not, so bounded draws go through this rejection sampler to keep seeded
// runs reproducible across toolchains.
inline std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

// Uniform integer in [lo, hi], inclusive.
inline int rng_range(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

} // namespace kclab
