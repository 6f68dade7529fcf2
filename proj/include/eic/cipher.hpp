#pragma once

#include "eic/bigint.hpp"
#include "eic/image.hpp"
#include "eic/keys.hpp"
#include "eic/rng.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace eic {

// paper: one ephemeral k for the whole image, a single shared X, pixels used
// as-is (so equal pixels encrypt equally - the faithful, leaky variant).
// per_pixel: fresh k and X per element, with a +1 plaintext offset so the
// value 0 no longer maps to the fixed point y = 0.
enum class CipherMode : std::uint8_t { paper = 0x00, per_pixel = 0x01 };

// One ElGamal ciphertext pair (x, y) = (r^k, m * s^k) mod p.
struct ElementCipher {
    BigUint x;
    BigUint y;

    bool operator==(const ElementCipher&) const = default;
};

// Encrypted image: residue matrix Y plus ephemeral value(s) X, all in
// [0, p-1], planar row-major, same dimensions as the plaintext. p >= 257 so
// every 8-bit pixel value stays below the modulus.
struct CipherImage {
    CipherMode mode = CipherMode::paper;
    int width = 0;
    int height = 0;
    int channels = 1;
    BigUint p;
    std::vector<BigUint> x_values;  // 1 entry (paper) or one per element
    std::vector<BigUint> y_values;  // one per element

    std::size_t element_count() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
               static_cast<std::size_t>(channels);
    }

    bool operator==(const CipherImage&) const = default;
};

// x = r^k mod p, y = m * s^k mod p. Requires m in [0, p-1] and k in
// [1, p-2]; violations raise CryptoError("plaintext-out-of-range") and
// CryptoError("invalid-ephemeral").
ElementCipher encrypt_value(const BigUint& m, const PublicKey& pub, const BigUint& k);

// m = y * (x^a)^{-1} mod p. x = 0 raises CryptoError("not-invertible").
BigUint decrypt_value(const ElementCipher& c, const PrivateKey& priv);

// Encrypts planar row-major. Ephemeral draws happen sequentially up front,
// so a seeded rng reproduces the ciphertext exactly. Requires pub.p >= 257
// (CryptoError("modulus-too-small") otherwise).
CipherImage encrypt_image(const ImageMatrix& img, const PublicKey& pub, CipherMode mode,
                          RandomSource& rng);

// Exact inverse of encrypt_image under the matching key. A decrypted value
// outside the 8-bit range raises CryptoError("wrong-key-or-corrupt"); a
// modulus disagreement raises CryptoError("key-mismatch").
ImageMatrix decrypt_image(const CipherImage& c, const PrivateKey& priv);

// Cipher container (.eic), big-endian: magic "EIC1", mode byte, channel
// byte, width u32, height u32, L_p u16, p, X block, Y block; residues are
// fixed-width (L_p bytes each), no padding, no trailing bytes.
void write_cipher(const CipherImage& c, const std::filesystem::path& path);

// Bit-exact inverse of write_cipher. Structural violations raise
// FormatError("container-format") carrying the byte offset.
CipherImage read_cipher(const std::filesystem::path& path);

// Y reduced mod 256 as an 8-bit image for display. Not decryptable; this is
// only how the ciphertext is rendered for humans.
ImageMatrix cipher_preview(const CipherImage& c);

}  // namespace eic
