#ifndef NAC_TESTS_TEST_UTIL_HPP
#define NAC_TESTS_TEST_UTIL_HPP

#include "nac/crypto/rng.hpp"
#include "nac/wire/name.hpp"

#include <random>

namespace nac::test {

/// Random name with 1..maxLen components of 1..8 bytes drawn from `alphabet`.
inline Name
randomName(std::mt19937_64& gen, size_t maxLen = 5,
           std::string_view alphabet = "abcdefghijklmnopqrstuvwxyz0123456789")
{
  std::uniform_int_distribution<size_t> len(1, maxLen);
  std::uniform_int_distribution<size_t> clen(1, 8);
  std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
  Name n;
  size_t k = len(gen);
  for (size_t i = 0; i < k; ++i) {
    std::string c;
    size_t l = clen(gen);
    for (size_t j = 0; j < l; ++j)
      c += alphabet[pick(gen)];
    n.append(c);
  }
  return n;
}

inline Bytes
randomBytes(std::mt19937_64& gen, size_t n)
{
  Bytes b(n);
  for (auto& x : b)
    x = static_cast<uint8_t>(gen());
  return b;
}

} // namespace nac::test

#endif // NAC_TESTS_TEST_UTIL_HPP
