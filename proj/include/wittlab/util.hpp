#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace wittlab {

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// p^k, throwing InputError on overflow past 2^62.
std::uint64_t checked_pow(std::uint64_t p, std::uint64_t k);

/// Modular helpers on residues modulo m < 2^63.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}
inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t s = a + b;
  return s >= m ? s - m : s;
}
inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

}  // namespace wittlab
