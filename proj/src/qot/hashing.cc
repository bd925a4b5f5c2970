#include "qot/hashing.h"

#include <cctype>
#include <stdexcept>

namespace qot {

namespace {

void require_even_length(int ell) {
  if (ell < 2 || ell % 2 != 0) {
    throw std::invalid_argument("hash input length must be even and >= 2, got " +
                                std::to_string(ell));
  }
}

}  // namespace

HashSpec sample_hash(int ell, Rng& rng) {
  require_even_length(ell);
  return HashSpec{ell, random_bits(rng, static_cast<std::size_t>(ell / 2 + ell - 1))};
}

void validate(const HashSpec& spec) {
  require_even_length(spec.ell);
  if (spec.seed.size() != static_cast<std::size_t>(spec.ell / 2 + spec.ell - 1)) {
    throw std::invalid_argument("hash seed must have ell/2 + ell - 1 bits");
  }
  for (auto b : spec.seed) {
    if (b > 1) throw std::invalid_argument("hash seed bits must be 0 or 1");
  }
}

BitString hash(const HashSpec& spec, const BitString& message) {
  validate(spec);
  if (message.size() != static_cast<std::size_t>(spec.ell)) {
    throw std::invalid_argument("hash: message has " + std::to_string(message.size()) +
                                " bits, expected " + std::to_string(spec.ell));
  }
  const int rows = spec.ell / 2;
  BitString out(static_cast<std::size_t>(rows), 0);
  for (int i = 0; i < rows; ++i) {
    std::uint8_t acc = 0;
    for (int j = 0; j < spec.ell; ++j) {
      acc ^= spec.seed[static_cast<std::size_t>(i - j + spec.ell - 1)] &
             message[static_cast<std::size_t>(j)];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

double expected_collisions(double population, double buckets) {
  if (!(population > 0) || !(buckets > 0)) {
    throw std::invalid_argument("expected_collisions: arguments must be positive");
  }
  return population / buckets;
}

BitString random_bits(Rng& rng, std::size_t length) {
  BitString out(length);
  for (auto& b : out) b = coin(rng) ? 1 : 0;
  return out;
}

BitString xor_bits(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw std::invalid_argument("xor_bits: length mismatch");
  BitString out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

std::size_t hamming_distance(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

std::string to_hex(const BitString& bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out((bits.size() + 3) / 4, '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      const int v = (out[i / 4] <= '9' ? out[i / 4] - '0' : out[i / 4] - 'a' + 10) | (8 >> (i % 4));
      out[i / 4] = kDigits[v];
    }
  }
  return out;
}

BitString from_hex(std::string_view hex, std::size_t length) {
  if (hex.size() != (length + 3) / 4) {
    throw std::invalid_argument("from_hex: " + std::to_string(hex.size()) +
                                " digits cannot hold exactly " + std::to_string(length) + " bits");
  }
  BitString out(length, 0);
  for (std::size_t k = 0; k < hex.size(); ++k) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[k])));
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else throw std::invalid_argument("from_hex: bad digit");
    for (int b = 0; b < 4; ++b) {
      const std::size_t i = 4 * k + static_cast<std::size_t>(b);
      const bool set = (v >> (3 - b)) & 1;
      if (i < length) out[i] = set ? 1 : 0;
      else if (set) throw std::invalid_argument("from_hex: nonzero padding bits");
    }
  }
  return out;
}

std::string to_binary(const BitString& bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out += b ? '1' : '0';
  return out;
}

}  // namespace qot
