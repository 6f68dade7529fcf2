#pragma once

#include "eic/bigint.hpp"

#include <cstdint>
#include <random>

namespace eic {

// Source of uniform random integers. Seeded instances replay the exact same
// draw sequence on every platform (mt19937_64 plus fixed-order rejection
// sampling), which is what makes --seed pipelines byte-reproducible.
// Instances are not safe to share across threads.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    // Nondeterministic seeding for real key material.
    static RandomSource from_entropy();

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 2^nbits).
    BigUint bits(std::size_t nbits);

    // Uniform in [0, bound) by rejection; bound >= 1.
    BigUint below(const BigUint& bound);

    // Uniform in [lo, hi] inclusive; lo <= hi.
    BigUint in_range(const BigUint& lo, const BigUint& hi);

private:
    std::mt19937_64 engine_;
};

}  // namespace eic
