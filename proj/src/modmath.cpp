#include "eic/modmath.hpp"

#include "eic/error.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>

namespace eic {

namespace {

using boost::multiprecision::bit_set;
using boost::multiprecision::bit_test;

constexpr std::uint64_t kTrialDivisionCutoff = std::uint64_t{1} << 16;

// Witnesses 2..37 decide primality exactly for all n < 3.317e24 (Sorenson &
// Webster); random witnesses beyond them only lower the error further.
constexpr std::array<unsigned, 12> kFixedWitnesses = {2,  3,  5,  7,  11, 13,
                                                      17, 19, 23, 29, 31, 37};

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<std::uint32_t> out;
        std::vector<bool> sieve(1u << 16, true);
        for (std::uint32_t i = 2; i < sieve.size(); ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t{i} * i; j < sieve.size(); j += i)
                sieve[j] = false;
        }
        return out;
    }();
    return primes;
}

bool trial_division_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// One Miller-Rabin round: true when `witness` does not prove n composite.
// n odd, n >= 5; n - 1 = d * 2^s with d odd.
bool passes_witness(const BigUint& n, const BigUint& witness, const BigUint& d, int s) {
    BigUint x = mod_exp(witness, d, n);
    const BigUint n_minus_1 = n - 1;
    if (x == 1 || x == n_minus_1) return true;
    for (int i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n_minus_1) return true;
    }
    return false;
}

// Pollard rho, Brent's cycle finding with batched gcds. Returns a nontrivial
// factor of odd composite n, or 0 once `budget` f-evaluations are used up.
BigUint pollard_rho(const BigUint& n, std::uint64_t& budget) {
    if (!bit_test(n, 0)) return 2;
    const std::uint64_t key = static_cast<std::uint64_t>(n & 0xFFFFFFFFFFFFFFFFULL);
    std::mt19937_64 param_gen(key ^ 0x9E3779B97F4A7C15ULL);
    constexpr std::uint64_t kBatch = 128;
    while (budget > 0) {
        const BigUint c = BigUint(param_gen()) % (n - 3) + 1;
        BigUint y = BigUint(param_gen()) % n;
        BigUint g = 1, q = 1, x = 0, ys = 0;
        std::uint64_t r = 1;
        while (g == 1 && budget > 0) {
            x = y;
            for (std::uint64_t i = 0; i < r && budget > 0; ++i) {
                y = (y * y + c) % n;
                --budget;
            }
            std::uint64_t k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                const std::uint64_t lim = std::min(kBatch, r - k);
                std::uint64_t done = 0;
                for (; done < lim && budget > 0; ++done) {
                    y = (y * y + c) % n;
                    --budget;
                    q = q * (x > y ? x - y : y - x) % n;
                }
                g = boost::multiprecision::gcd(q, n);
                k += done;
            }
            r <<= 1;
        }
        if (g == n) {
            // The factor appeared inside the last batch; replay it stepwise
            // from the batch checkpoint. Stops within the batch length.
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                g = boost::multiprecision::gcd(x > ys ? x - ys : ys - x, n);
            }
        }
        if (g > 1 && g < n) return g;
        // g == n (degenerate cycle) or budget ran dry with g == 1: retry.
    }
    return 0;
}

}  // namespace

BigUint FactorSet::value() const {
    BigUint v = 1;
    for (const auto& [prime, exponent] : factors)
        for (unsigned i = 0; i < exponent; ++i) v *= prime;
    return v;
}

BigUint mod_exp(const BigUint& base, const BigUint& exponent, const BigUint& modulus) {
    if (modulus < 2)
        throw CryptoError("invalid-modulus",
                          "modulus must be >= 2, got " + to_decimal(modulus));
    BigUint result = 1;
    BigUint b = base % modulus;
    BigUint e = exponent;
    while (e > 0) {
        if (bit_test(e, 0)) result = result * b % modulus;
        b = b * b % modulus;
        e >>= 1;
    }
    return result;
}

BigUint mod_inv(const BigUint& x, const BigUint& p) {
    if (p < 2)
        throw CryptoError("invalid-modulus", "modulus must be >= 2, got " + to_decimal(p));
    BigUint r0 = p;
    BigUint r1 = x % p;
    if (r1 == 0)
        throw CryptoError("not-invertible",
                          to_decimal(x) + " is not invertible mod " + to_decimal(p));
    // Track only the Bezout coefficient of x; s1 may go negative.
    BigUint s0 = 0, s1 = 1;
    while (r1 != 0) {
        const BigUint q = r0 / r1;
        BigUint r2 = r0 - q * r1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        BigUint s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0 != 1)
        throw CryptoError("not-invertible", to_decimal(x) + " and " + to_decimal(p) +
                                                " share factor " + to_decimal(r0));
    BigUint inv = s0 % p;
    if (inv < 0) inv += p;
    return inv;
}

bool is_probable_prime(const BigUint& n, int rounds) {
    if (n < 2) return false;
    if (n < kTrialDivisionCutoff)
        return trial_division_is_prime(static_cast<std::uint64_t>(n));
    if (!bit_test(n, 0)) return false;
    for (std::uint32_t q : small_primes()) {
        if (q > 1000) break;
        if (n % q == 0) return false;
    }

    BigUint d = n - 1;
    int s = 0;
    while (!bit_test(d, 0)) {
        d >>= 1;
        ++s;
    }

    // Extra witnesses come from a generator keyed on n so the verdict is a
    // pure function of (n, rounds).
    const std::uint64_t key = static_cast<std::uint64_t>(n & 0xFFFFFFFFFFFFFFFFULL);
    std::mt19937_64 witness_gen(key ^ 0xD1B54A32D192ED03ULL);
    const BigUint span = n - 4;  // witnesses drawn from [2, n-2]
    for (int i = 0; i < rounds; ++i) {
        BigUint witness;
        if (i < static_cast<int>(kFixedWitnesses.size())) {
            witness = kFixedWitnesses[static_cast<std::size_t>(i)];
        } else {
            BigUint v = 0;
            const std::size_t words = (bit_length(span) + 63) / 64;
            for (std::size_t w = 0; w < words; ++w) {
                v <<= 64;
                v |= BigUint(witness_gen());
            }
            witness = 2 + v % (span + 1);
        }
        if (!passes_witness(n, witness, d, s)) return false;
    }
    return true;
}

FactorSet factorize(const BigUint& n, std::uint64_t effort_bound) {
    if (n < 2)
        throw CryptoError("invalid-argument", "factorize requires n >= 2, got " + to_decimal(n));
    std::map<BigUint, unsigned> acc;
    BigUint rest = n;
    for (std::uint32_t q : small_primes()) {
        if (rest == 1) break;
        if (BigUint(q) * q > rest) break;
        while (rest % q == 0) {
            rest /= q;
            ++acc[BigUint(q)];
        }
    }
    std::uint64_t budget = effort_bound;
    std::vector<BigUint> pending;
    if (rest > 1) pending.push_back(rest);
    while (!pending.empty()) {
        BigUint m = std::move(pending.back());
        pending.pop_back();
        if (is_probable_prime(m)) {
            ++acc[m];
            continue;
        }
        BigUint d = pollard_rho(m, budget);
        if (d == 0)
            throw CryptoError("factorization-incomplete",
                              "effort exhausted with composite cofactor " + to_decimal(m) +
                                  " of " + to_decimal(n));
        pending.push_back(m / d);
        pending.push_back(std::move(d));
    }
    FactorSet result;
    result.factors.assign(acc.begin(), acc.end());
    return result;
}

BigUint euler_phi(const BigUint& n, std::uint64_t effort_bound) {
    if (n < 1)
        throw CryptoError("invalid-argument", "euler_phi requires n >= 1");
    if (n == 1) return 1;
    BigUint phi = 1;
    for (const auto& [prime, exponent] : factorize(n, effort_bound).factors) {
        phi *= prime - 1;
        for (unsigned i = 1; i < exponent; ++i) phi *= prime;
    }
    return phi;
}

bool is_primitive_root(const BigUint& r, const BigUint& p, const FactorSet& phi_factors) {
    if (p < 2)
        throw CryptoError("invalid-modulus", "modulus must be >= 2, got " + to_decimal(p));
    const BigUint reduced = r % p;
    if (reduced == 0)
        throw CryptoError("invalid-argument", "r must not be divisible by p");
    const BigUint phi = p - 1;
    if (phi_factors.value() != phi)
        throw CryptoError("invalid-argument", "phi_factors is not a factorization of p-1");
    for (const auto& [q, exponent] : phi_factors.factors)
        if (mod_exp(reduced, phi / q, p) == 1) return false;
    return true;
}

BigUint find_primitive_root(const BigUint& p, const FactorSet& phi_factors,
                            RandomSource* rng) {
    if (p < 3)
        throw CryptoError("invalid-argument", "p must be an odd prime >= 3");
    if (rng == nullptr) {
        for (BigUint r = 2; r < p; ++r)
            if (is_primitive_root(r, p, phi_factors)) return r;
        throw CryptoError("internal-error",
                          "no primitive root below " + to_decimal(p) + "; p is not prime");
    }
    for (;;) {
        const BigUint r = rng->in_range(2, p - 1);
        if (is_primitive_root(r, p, phi_factors)) return r;
    }
}

BigUint gen_safe_prime(int bits, RandomSource& rng) {
    if (bits < 10)
        throw CryptoError("key-too-small",
                          "safe prime generation needs >= 10 bits, got " + std::to_string(bits));
    for (;;) {
        // q gets exactly bits-1 bits, so p = 2q+1 gets exactly `bits`.
        BigUint q = rng.bits(static_cast<std::size_t>(bits) - 2);
        bit_set(q, static_cast<unsigned>(bits) - 2);
        bit_set(q, 0);
        if (!is_probable_prime(q, 1)) continue;
        const BigUint p = 2 * q + 1;
        if (!is_probable_prime(p, 1)) continue;
        if (is_probable_prime(q, 40) && is_probable_prime(p, 40)) return p;
    }
}

}  // namespace eic
