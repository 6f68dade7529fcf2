#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace eic {

// Arbitrary-precision integer. Holds every integer quantity of the
// cryptosystem (p, r, a, s, k, x, y, m); values are non-negative by
// contract everywhere outside the extended-Euclid internals.
using BigUint = boost::multiprecision::cpp_int;

// Number of significant bits; 0 for the value 0.
std::size_t bit_length(const BigUint& v);

// Minimal big-endian byte count; 1 for the value 0.
std::size_t byte_length(const BigUint& v);

// Fixed-width big-endian encoding, zero padded on the left.
// Throws CryptoError("value-overflow") if v needs more than `width` bytes.
std::vector<std::uint8_t> to_bytes_be(const BigUint& v, std::size_t width);

BigUint from_bytes_be(const std::uint8_t* data, std::size_t len);

// Canonical decimal form: no sign, no leading zeros, "0" for zero.
std::string to_decimal(const BigUint& v);

// Strict inverse of to_decimal. Throws FormatError("parse") on anything
// else: empty input, non-digits, leading zeros.
BigUint parse_decimal(std::string_view text);

}  // namespace eic
