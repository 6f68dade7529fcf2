#pragma once

#include "eic/bigint.hpp"
#include "eic/rng.hpp"

#include <filesystem>

namespace eic {

// Announced triple (r, s, p): prime modulus p, primitive root r of p,
// and s = r^a mod p.
struct PublicKey {
    BigUint p;
    BigUint r;
    BigUint s;

    bool operator==(const PublicKey&) const = default;
};

// Secret exponent a in [2, p-2], kept together with its arithmetic context
// so decryption needs only this file plus the cipher container.
struct PrivateKey {
    BigUint p;
    BigUint r;
    BigUint a;

    bool operator==(const PrivateKey&) const = default;
};

struct KeyPair {
    PublicKey pub;
    PrivateKey priv;

    bool operator==(const KeyPair&) const = default;
};

// Safe prime p of `bits` bits, smallest primitive root r, uniform secret
// a in [2, p-2], s = r^a mod p. Throws CryptoError("key-too-small") for
// bits < 10.
KeyPair generate_keypair(int bits, RandomSource& rng);

// (r, s, p) with s = r^a mod p. Throws CryptoError("invalid-key") when a is
// outside [2, p-2].
PublicKey derive_public(const PrivateKey& priv);

// Key files are UTF-8 text with LF line endings:
//   ELGAMAL PUBLIC v1            ELGAMAL PRIVATE v1
//   p=<decimal>                  p=<decimal>
//   r=<decimal>                  r=<decimal>
//   s=<decimal>                  a=<decimal>
void save_key(const PublicKey& key, const std::filesystem::path& path);
void save_key(const PrivateKey& key, const std::filesystem::path& path);

// Loaders re-check every invariant they can see: the public loader demands a
// probable-prime p and verifies r is a primitive root (factoring p-1 within
// the default effort bound); the private loader checks the exponent range.
// Malformed files raise FormatError("parse") naming the offending line.
PublicKey load_public_key(const std::filesystem::path& path);
PrivateKey load_private_key(const std::filesystem::path& path);

}  // namespace eic
