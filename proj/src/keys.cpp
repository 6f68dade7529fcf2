#include "eic/keys.hpp"

#include "eic/error.hpp"
#include "eic/modmath.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace eic {

namespace {

constexpr const char* kPublicHeader = "ELGAMAL PUBLIC v1";
constexpr const char* kPrivateHeader = "ELGAMAL PRIVATE v1";

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FormatError("io-error", "cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw FormatError("io-error", "failed writing " + path.string());
}

// Splits on LF. A single trailing newline is allowed and produces no extra
// line; anything after the last expected line is an error.
std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("io-error", "cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

BigUint parse_field(const std::vector<std::string>& lines, std::size_t index, char name) {
    const std::string expected = std::string(1, name) + "=<decimal>";
    if (index >= lines.size())
        throw FormatError("parse",
                          "line " + std::to_string(index + 1) + ": expected " + expected);
    const std::string& line = lines[index];
    if (line.size() < 2 || line[0] != name || line[1] != '=')
        throw FormatError("parse",
                          "line " + std::to_string(index + 1) + ": expected " + expected);
    try {
        return parse_decimal(std::string_view(line).substr(2));
    } catch (const FormatError& e) {
        throw FormatError("parse", "line " + std::to_string(index + 1) + ": " +
                                       std::string(e.what()));
    }
}

void check_line_count(const std::vector<std::string>& lines, std::size_t expected) {
    if (lines.size() > expected)
        throw FormatError("parse", "line " + std::to_string(expected + 1) +
                                       ": unexpected trailing content");
}

}  // namespace

KeyPair generate_keypair(int bits, RandomSource& rng) {
    if (bits < 10)
        throw CryptoError("key-too-small",
                          "modulus needs >= 10 bits, got " + std::to_string(bits));
    const BigUint p = gen_safe_prime(bits, rng);
    const FactorSet phi_factors = factorize(p - 1);
    const BigUint r = find_primitive_root(p, phi_factors);
    const BigUint a = rng.in_range(2, p - 2);
    const BigUint s = mod_exp(r, a, p);
    return KeyPair{PublicKey{p, r, s}, PrivateKey{p, r, a}};
}

PublicKey derive_public(const PrivateKey& priv) {
    if (priv.a < 2 || priv.a > priv.p - 2)
        throw CryptoError("invalid-key", "private exponent must lie in [2, p-2]");
    return PublicKey{priv.p, priv.r, mod_exp(priv.r, priv.a, priv.p)};
}

void save_key(const PublicKey& key, const std::filesystem::path& path) {
    std::string text = std::string(kPublicHeader) + "\n" +
                       "p=" + to_decimal(key.p) + "\n" +
                       "r=" + to_decimal(key.r) + "\n" +
                       "s=" + to_decimal(key.s) + "\n";
    write_text_file(path, text);
}

void save_key(const PrivateKey& key, const std::filesystem::path& path) {
    std::string text = std::string(kPrivateHeader) + "\n" +
                       "p=" + to_decimal(key.p) + "\n" +
                       "r=" + to_decimal(key.r) + "\n" +
                       "a=" + to_decimal(key.a) + "\n";
    write_text_file(path, text);
}

PublicKey load_public_key(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != kPublicHeader)
        throw FormatError("parse", "line 1: expected '" + std::string(kPublicHeader) + "'");
    PublicKey key;
    key.p = parse_field(lines, 1, 'p');
    key.r = parse_field(lines, 2, 'r');
    key.s = parse_field(lines, 3, 's');
    check_line_count(lines, 4);

    if (!is_probable_prime(key.p))
        throw CryptoError("invalid-key", "p is not prime");
    if (key.r < 2 || key.r > key.p - 1)
        throw CryptoError("invalid-key", "r must lie in [2, p-1]");
    if (key.s < 1 || key.s > key.p - 1)
        throw CryptoError("invalid-key", "s must lie in [1, p-1]");
    // factorization-incomplete propagates: a p whose p-1 we cannot factor
    // cannot be validated, so it is rejected rather than trusted.
    if (!is_primitive_root(key.r, key.p, factorize(key.p - 1)))
        throw CryptoError("invalid-key", "r is not a primitive root of p");
    return key;
}

PrivateKey load_private_key(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != kPrivateHeader)
        throw FormatError("parse", "line 1: expected '" + std::string(kPrivateHeader) + "'");
    PrivateKey key;
    key.p = parse_field(lines, 1, 'p');
    key.r = parse_field(lines, 2, 'r');
    key.a = parse_field(lines, 3, 'a');
    check_line_count(lines, 4);

    if (key.p < 5)
        throw CryptoError("invalid-key", "p is too small to admit an exponent in [2, p-2]");
    if (key.r < 2 || key.r > key.p - 1)
        throw CryptoError("invalid-key", "r must lie in [2, p-1]");
    if (key.a < 2 || key.a > key.p - 2)
        throw CryptoError("invalid-key", "private exponent must lie in [2, p-2]");
    return key;
}

}  // namespace eic
