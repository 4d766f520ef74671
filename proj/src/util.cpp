#include "wittlab/util.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>

#include "wittlab/errors.hpp"

namespace wittlab {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr);
  std::string out;
  out.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

std::uint64_t checked_pow(std::uint64_t p, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (r > (1ULL << 62) / p) throw InputError("integer power overflow");
    r *= p;
  }
  return r;
}

}  // namespace wittlab
