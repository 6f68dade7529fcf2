#include "eic/cipher.hpp"

#include "eic/error.hpp"
#include "eic/modmath.hpp"

#include <cstring>
#include <fstream>
#include <string>

namespace eic {

namespace {

constexpr char kMagic[4] = {'E', 'I', 'C', '1'};
constexpr unsigned kMinModulus = 257;  // smallest prime above every 8-bit value

// Per-pixel mode stores m+1 so that m = 0 does not encrypt to y = 0; values
// then occupy [1, 256], still below p >= 257.
constexpr unsigned kPerPixelOffset = 1;

void require_matching_sizes(const CipherImage& c) {
    const std::size_t n = c.element_count();
    if (c.width < 1 || c.height < 1)
        throw FormatError("container-format", "image dimensions must be at least 1x1");
    if (c.channels != 1 && c.channels != 3)
        throw FormatError("container-format", "channel count must be 1 or 3");
    if (c.y_values.size() != n)
        throw FormatError("container-format", "Y block holds " +
                                                  std::to_string(c.y_values.size()) +
                                                  " residues, expected " + std::to_string(n));
    const std::size_t expected_x = c.mode == CipherMode::paper ? 1 : n;
    if (c.x_values.size() != expected_x)
        throw FormatError("container-format", "X block holds " +
                                                  std::to_string(c.x_values.size()) +
                                                  " residues, expected " +
                                                  std::to_string(expected_x));
}

void append_u32_be(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void append_u16_be(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t read_u32_be(const std::uint8_t* p) {
    return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
           (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

std::uint16_t read_u16_be(const std::uint8_t* p) {
    return static_cast<std::uint16_t>((std::uint16_t{p[0]} << 8) | std::uint16_t{p[1]});
}

[[noreturn]] void container_fail(std::size_t offset, const std::string& what) {
    throw FormatError("container-format",
                      what + " (byte offset " + std::to_string(offset) + ")");
}

}  // namespace

ElementCipher encrypt_value(const BigUint& m, const PublicKey& pub, const BigUint& k) {
    if (m >= pub.p)
        throw CryptoError("plaintext-out-of-range", "m = " + to_decimal(m) +
                                                        " must be below p = " +
                                                        to_decimal(pub.p));
    if (k < 1 || k > pub.p - 2)
        throw CryptoError("invalid-ephemeral",
                          "k = " + to_decimal(k) + " must lie in [1, p-2]");
    ElementCipher c;
    c.x = mod_exp(pub.r, k, pub.p);
    c.y = m * mod_exp(pub.s, k, pub.p) % pub.p;
    return c;
}

BigUint decrypt_value(const ElementCipher& c, const PrivateKey& priv) {
    const BigUint x = c.x % priv.p;
    if (x == 0)
        throw CryptoError("not-invertible", "ciphertext x = 0 has no inverse");
    return c.y % priv.p * mod_inv(mod_exp(x, priv.a, priv.p), priv.p) % priv.p;
}

CipherImage encrypt_image(const ImageMatrix& img, const PublicKey& pub, CipherMode mode,
                          RandomSource& rng) {
    if (pub.p < kMinModulus)
        throw CryptoError("modulus-too-small",
                          "p = " + to_decimal(pub.p) +
                              " cannot hold 8-bit pixels; need p >= 257");
    const std::size_t n = img.element_count();
    CipherImage out;
    out.mode = mode;
    out.width = img.width;
    out.height = img.height;
    out.channels = img.channels;
    out.p = pub.p;
    out.y_values.reserve(n);
    if (mode == CipherMode::paper) {
        const BigUint k = rng.in_range(1, pub.p - 2);
        out.x_values.push_back(mod_exp(pub.r, k, pub.p));
        const BigUint s_k = mod_exp(pub.s, k, pub.p);
        for (std::uint8_t m : img.values) out.y_values.push_back(m * s_k % pub.p);
    } else {
        // All ephemerals are drawn before any arithmetic, in planar
        // row-major order; element processing may then be reordered freely
        // without changing the result.
        std::vector<BigUint> ks;
        ks.reserve(n);
        for (std::size_t i = 0; i < n; ++i) ks.push_back(rng.in_range(1, pub.p - 2));
        out.x_values.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            ElementCipher ec =
                encrypt_value(BigUint(img.values[i]) + kPerPixelOffset, pub, ks[i]);
            out.x_values.push_back(std::move(ec.x));
            out.y_values.push_back(std::move(ec.y));
        }
    }
    return out;
}

ImageMatrix decrypt_image(const CipherImage& c, const PrivateKey& priv) {
    if (priv.p != c.p)
        throw CryptoError("key-mismatch", "key modulus " + to_decimal(priv.p) +
                                              " does not match container modulus " +
                                              to_decimal(c.p));
    require_matching_sizes(c);
    ImageMatrix img;
    img.width = c.width;
    img.height = c.height;
    img.channels = c.channels;
    img.values.resize(c.element_count());
    if (c.mode == CipherMode::paper) {
        const BigUint x = c.x_values[0] % priv.p;
        if (x == 0) throw CryptoError("not-invertible", "ciphertext x = 0 has no inverse");
        const BigUint shared_inv = mod_inv(mod_exp(x, priv.a, priv.p), priv.p);
        for (std::size_t i = 0; i < img.values.size(); ++i) {
            const BigUint m = c.y_values[i] * shared_inv % priv.p;
            if (m > 255)
                throw CryptoError("wrong-key-or-corrupt",
                                  "element " + std::to_string(i) + " decrypts to " +
                                      to_decimal(m) + ", outside the 8-bit range");
            img.values[i] = static_cast<std::uint8_t>(m);
        }
    } else {
        for (std::size_t i = 0; i < img.values.size(); ++i) {
            const BigUint m =
                decrypt_value(ElementCipher{c.x_values[i], c.y_values[i]}, priv);
            if (m < kPerPixelOffset || m > 255 + kPerPixelOffset)
                throw CryptoError("wrong-key-or-corrupt",
                                  "element " + std::to_string(i) + " decrypts to " +
                                      to_decimal(m) + ", outside the offset 8-bit range");
            img.values[i] = static_cast<std::uint8_t>(m - kPerPixelOffset);
        }
    }
    return img;
}

void write_cipher(const CipherImage& c, const std::filesystem::path& path) {
    require_matching_sizes(c);
    if (c.p < kMinModulus)
        throw FormatError("container-format", "modulus below 257 cannot be written");
    const std::size_t lp = byte_length(c.p);
    if (lp > 0xFFFF)
        throw FormatError("container-format", "modulus is too wide for the container");
    std::vector<std::uint8_t> buf;
    buf.reserve(16 + lp * (1 + c.x_values.size() + c.y_values.size()));
    buf.insert(buf.end(), kMagic, kMagic + 4);
    buf.push_back(static_cast<std::uint8_t>(c.mode));
    buf.push_back(static_cast<std::uint8_t>(c.channels));
    append_u32_be(buf, static_cast<std::uint32_t>(c.width));
    append_u32_be(buf, static_cast<std::uint32_t>(c.height));
    append_u16_be(buf, static_cast<std::uint16_t>(lp));
    auto append_residue = [&](const BigUint& v, const char* block) {
        if (v >= c.p)
            throw FormatError("container-format", std::string(block) +
                                                      " residue " + to_decimal(v) +
                                                      " is not below p");
        const auto bytes = to_bytes_be(v, lp);
        buf.insert(buf.end(), bytes.begin(), bytes.end());
    };
    const auto p_bytes = to_bytes_be(c.p, lp);
    buf.insert(buf.end(), p_bytes.begin(), p_bytes.end());
    for (const BigUint& x : c.x_values) append_residue(x, "X");
    for (const BigUint& y : c.y_values) append_residue(y, "Y");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("io-error", "cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size()));
    out.flush();
    if (!out) throw FormatError("io-error", "failed writing " + path.string());
}

CipherImage read_cipher(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("io-error", "cannot open " + path.string());
    std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
    if (in.bad()) throw FormatError("io-error", "failed reading " + path.string());

    if (buf.size() < 16) container_fail(buf.size(), "truncated header");
    if (std::memcmp(buf.data(), kMagic, 4) != 0) container_fail(0, "bad magic");
    CipherImage c;
    if (buf[4] > 1) container_fail(4, "unknown mode byte " + std::to_string(buf[4]));
    c.mode = static_cast<CipherMode>(buf[4]);
    if (buf[5] != 1 && buf[5] != 3)
        container_fail(5, "channel byte must be 1 or 3, got " + std::to_string(buf[5]));
    c.channels = buf[5];
    const std::uint32_t width = read_u32_be(buf.data() + 6);
    const std::uint32_t height = read_u32_be(buf.data() + 10);
    if (width == 0) container_fail(6, "zero width");
    if (height == 0) container_fail(10, "zero height");
    if (width > 0x7FFFFFFF || height > 0x7FFFFFFF)
        container_fail(6, "dimension exceeds supported range");
    c.width = static_cast<int>(width);
    c.height = static_cast<int>(height);
    const std::uint16_t lp = read_u16_be(buf.data() + 14);
    if (lp == 0) container_fail(14, "zero modulus width");

    std::size_t pos = 16;
    if (buf.size() < pos + lp) container_fail(buf.size(), "truncated modulus");
    if (lp > 1 && buf[pos] == 0)
        container_fail(pos, "modulus width inconsistent with its byte length");
    c.p = from_bytes_be(buf.data() + pos, lp);
    if (c.p < kMinModulus) container_fail(pos, "modulus below 257");
    pos += lp;

    const unsigned __int128 n = static_cast<unsigned __int128>(width) * height * c.channels;
    const unsigned __int128 x_count = c.mode == CipherMode::paper ? 1 : n;
    const unsigned __int128 expected_size =
        static_cast<unsigned __int128>(pos) + (x_count + n) * lp;
    if (static_cast<unsigned __int128>(buf.size()) < expected_size)
        container_fail(buf.size(), "truncated residue data");
    if (static_cast<unsigned __int128>(buf.size()) > expected_size)
        container_fail(static_cast<std::size_t>(expected_size), "trailing bytes after Y block");

    auto read_block = [&](std::vector<BigUint>& out, std::size_t count, const char* block) {
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            BigUint v = from_bytes_be(buf.data() + pos, lp);
            if (v >= c.p)
                container_fail(pos, std::string(block) + " residue " + std::to_string(i) +
                                        " is not below p");
            out.push_back(std::move(v));
            pos += lp;
        }
    };
    read_block(c.x_values, static_cast<std::size_t>(x_count), "X");
    read_block(c.y_values, static_cast<std::size_t>(n), "Y");
    return c;
}

ImageMatrix cipher_preview(const CipherImage& c) {
    require_matching_sizes(c);
    ImageMatrix img;
    img.width = c.width;
    img.height = c.height;
    img.channels = c.channels;
    img.values.reserve(c.y_values.size());
    for (const BigUint& y : c.y_values)
        img.values.push_back(static_cast<std::uint8_t>(y & 0xFF));
    return img;
}

}  // namespace eic
