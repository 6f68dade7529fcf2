#include "eic/bigint.hpp"

#include "eic/error.hpp"

#include <algorithm>
#include <iterator>

namespace eic {

std::size_t bit_length(const BigUint& v) {
    if (v == 0) return 0;
    return boost::multiprecision::msb(v) + 1;
}

std::size_t byte_length(const BigUint& v) {
    if (v == 0) return 1;
    return (bit_length(v) + 7) / 8;
}

std::vector<std::uint8_t> to_bytes_be(const BigUint& v, std::size_t width) {
    std::vector<std::uint8_t> out(width, 0);
    if (v == 0) return out;
    if (byte_length(v) > width)
        throw CryptoError("value-overflow", to_decimal(v) + " does not fit in " +
                                                std::to_string(width) + " bytes");
    std::vector<std::uint8_t> significant;
    boost::multiprecision::export_bits(v, std::back_inserter(significant), 8);
    std::copy(significant.begin(), significant.end(), out.end() - significant.size());
    return out;
}

BigUint from_bytes_be(const std::uint8_t* data, std::size_t len) {
    BigUint v = 0;
    if (len > 0) boost::multiprecision::import_bits(v, data, data + len, 8, true);
    return v;
}

std::string to_decimal(const BigUint& v) {
    return v.str();
}

BigUint parse_decimal(std::string_view text) {
    if (text.empty())
        throw FormatError("parse", "expected a decimal integer, got empty string");
    if (text.size() > 1 && text.front() == '0')
        throw FormatError("parse", "leading zeros are not allowed: '" + std::string(text) + "'");
    for (char c : text)
        if (c < '0' || c > '9')
            throw FormatError("parse", "invalid decimal digit in '" + std::string(text) + "'");
    return BigUint(std::string(text));
}

}  // namespace eic
