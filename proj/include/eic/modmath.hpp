#pragma once

#include "eic/bigint.hpp"
#include "eic/rng.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace eic {

// Factorization budget for p-1 when a user supplies their own prime. Safe
// primes never touch it; a composite cofactor surviving this many Pollard
// rho iterations gets the candidate rejected instead of guessed at.
inline constexpr std::uint64_t kDefaultFactorEffort = std::uint64_t{1} << 22;

// Complete prime factorization, primes ascending.
struct FactorSet {
    std::vector<std::pair<BigUint, unsigned>> factors;

    // Product of prime^exponent.
    BigUint value() const;
};

// base^exponent mod modulus by square-and-multiply.
// Throws CryptoError("invalid-modulus") for modulus < 2.
BigUint mod_exp(const BigUint& base, const BigUint& exponent, const BigUint& modulus);

// Multiplicative inverse of x mod p by extended Euclid, result in [0, p).
// Throws CryptoError("not-invertible") when gcd(x, p) != 1 (including x = 0).
BigUint mod_inv(const BigUint& x, const BigUint& p);

// Miller-Rabin with `rounds` witnesses; exact trial division below 2^16.
// The first witnesses are the primes 2..37 (deterministically correct for
// n < 3.3e24), the rest are drawn from a generator keyed on n, so repeated
// calls agree. `false` means certainly composite.
bool is_probable_prime(const BigUint& n, int rounds = 40);

// Trial division then Pollard rho (Brent), sharing `effort_bound` rho
// iterations across all cofactors. Throws
// CryptoError("factorization-incomplete") when the budget runs out with a
// composite cofactor left.
FactorSet factorize(const BigUint& n, std::uint64_t effort_bound = kDefaultFactorEffort);

// Euler phi via the factorization of n; phi(1) = 1.
BigUint euler_phi(const BigUint& n, std::uint64_t effort_bound = kDefaultFactorEffort);

// True iff the order of r mod p is exactly p-1, tested as
// r^((p-1)/q) != 1 for every distinct prime q | p-1. `phi_factors` must be
// the factorization of p-1.
bool is_primitive_root(const BigUint& r, const BigUint& p, const FactorSet& phi_factors);

// Smallest primitive root >= 2 when rng is null, otherwise a uniformly
// sampled one. p must be an odd prime; terminates because every prime has a
// primitive root.
BigUint find_primitive_root(const BigUint& p, const FactorSet& phi_factors,
                            RandomSource* rng = nullptr);

// Prime p of exactly `bits` bits with (p-1)/2 prime, both confirmed with 40
// Miller-Rabin rounds. bits >= 10.
BigUint gen_safe_prime(int bits, RandomSource& rng);

}  // namespace eic
