#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cubelock {

// Arbitrary-precision nonnegative integer. All modular arithmetic in this
// library is expressed over this type; the GMP backend supplies the
// underlying multiplication and division.
using Natural = mpz_class;

using Bytes = std::vector<std::uint8_t>;

// Number of bits in the binary representation; 0 for zero.
inline std::size_t bit_length(const Natural& x) {
    return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline bool test_bit(const Natural& x, std::size_t i) {
    return mpz_tstbit(x.get_mpz_t(), i) != 0;
}

inline std::size_t popcount(const Natural& x) {
    return mpz_popcount(x.get_mpz_t());
}

// Value of the w bits starting at bit position `lo` (LSB order).
std::uint32_t extract_bits(const Natural& x, std::size_t lo, unsigned w);

Natural pow2(std::size_t e);

// Canonical big-endian byte string; empty for zero.
Bytes to_bytes_be(const Natural& x);
Natural from_bytes_be(const std::uint8_t* data, std::size_t len);
inline Natural from_bytes_be(const Bytes& b) { return from_bytes_be(b.data(), b.size()); }

// Big-endian bytes left-padded with zeros to exactly `width` bytes.
Bytes to_fixed_bytes_be(const Natural& x, std::size_t width);

// Lowercase hex without leading zeros ("0" for zero).
std::string to_hex(const Natural& x);
Natural from_hex(const std::string& hex);

std::string to_dec(const Natural& x);

} // namespace cubelock
