#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qot/rng.h"

namespace qot {

// One bit per element, each 0 or 1.
using BitString = std::vector<std::uint8_t>;

// Member of the Toeplitz family over GF(2) mapping ell bits to ell/2 bits.
// Row i, column j of the matrix is seed[i - j + ell - 1].
struct HashSpec {
  int ell = 0;
  BitString seed;

  friend bool operator==(const HashSpec&, const HashSpec&) = default;
};

// Throws std::invalid_argument for odd or non-positive ell.
HashSpec sample_hash(int ell, Rng& rng);

// Throws std::invalid_argument if the seed length is not ell/2 + ell - 1.
void validate(const HashSpec& spec);

BitString hash(const HashSpec& spec, const BitString& message);

// Bound N/b on the expected number of elements among N that collide with a
// fixed element under a universal family with b outputs.
double expected_collisions(double population, double buckets);

BitString random_bits(Rng& rng, std::size_t length);
BitString xor_bits(const BitString& a, const BitString& b);
std::size_t hamming_distance(const BitString& a, const BitString& b);

// Bits fill nibbles most significant first; the tail is zero padded. The
// bit length travels separately.
std::string to_hex(const BitString& bits);
BitString from_hex(std::string_view hex, std::size_t length);

// "0110..." form, mostly for diagnostics.
std::string to_binary(const BitString& bits);

}  // namespace qot
