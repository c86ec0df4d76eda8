#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace spikecom {

// Uniform double in [0, 1) with 53 bits of entropy. Unlike
// std::uniform_real_distribution the result does not depend on the
// standard library implementation, which keeps seeded runs portable.
inline double uniform_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n); rejection sampling removes the modulo bias.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    assert(n > 0);
    const std::uint64_t rem = (0 - n) % n;  // 2^64 mod n
    std::uint64_t x = rng();
    if (rem != 0) {
        const std::uint64_t bound = 0 - rem;  // largest multiple of n
        while (x >= bound) {
            x = rng();
        }
    }
    return x % n;
}

// Fisher-Yates shuffle on top of uniform_index, again to stay independent
// of std::shuffle's unspecified draw sequence.
template <typename T>
void fisher_yates_shuffle(std::vector<T>& values, std::mt19937_64& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::swap(values[i - 1], values[uniform_index(rng, i)]);
    }
}

}  // namespace spikecom
