#include "eic/rng.hpp"

#include "eic/error.hpp"

namespace eic {

RandomSource RandomSource::from_entropy() {
    std::random_device rd;
    const std::uint64_t seed =
        (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
    return RandomSource(seed);
}

BigUint RandomSource::bits(std::size_t nbits) {
    // Words are drawn most-significant first; the draw order is part of the
    // reproducibility contract.
    BigUint v = 0;
    std::size_t remaining = nbits;
    while (remaining >= 64) {
        v <<= 64;
        v |= BigUint(next_u64());
        remaining -= 64;
    }
    if (remaining > 0) {
        const std::uint64_t mask = (std::uint64_t{1} << remaining) - 1;
        v <<= remaining;
        v |= BigUint(next_u64() & mask);
    }
    return v;
}

BigUint RandomSource::below(const BigUint& bound) {
    if (bound < 1)
        throw CryptoError("invalid-argument", "random bound must be >= 1");
    const std::size_t nbits = bit_length(bound);
    for (;;) {
        BigUint v = bits(nbits);
        if (v < bound) return v;
    }
}

BigUint RandomSource::in_range(const BigUint& lo, const BigUint& hi) {
    if (lo > hi)
        throw CryptoError("invalid-argument", "empty random range [" + to_decimal(lo) +
                                                  ", " + to_decimal(hi) + "]");
    return lo + below(hi - lo + 1);
}

}  // namespace eic
