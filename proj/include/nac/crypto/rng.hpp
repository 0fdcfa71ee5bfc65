#ifndef NAC_CRYPTO_RNG_HPP
#define NAC_CRYPTO_RNG_HPP

#include "nac/common/bytes.hpp"

#include <memory>
#include <string_view>

namespace nac::crypto {

/**
 * Seedable CSPRNG: AES-256-CTR keystream keyed by SHA-256 of the seed
 * material. Every random choice in the library (keys, IVs, nonces, ECDSA
 * key pairs) draws from one of these, so a fixed seed replays a run exactly.
 *
 * Not shareable between concurrent callers.
 */
class Rng
{
public:
  explicit
  Rng(uint64_t seed);

  explicit
  Rng(ByteView seedMaterial);

  Rng(Rng&&) noexcept;
  Rng& operator=(Rng&&) noexcept;
  ~Rng();

  void
  fill(std::span<uint8_t> out);

  Bytes
  bytes(size_t n);

  uint32_t
  nextU32();

  uint64_t
  nextU64();

  /// Independent stream derived from this generator's seed and a label;
  /// does not advance this generator.
  Rng
  derive(std::string_view label) const;

private:
  struct Impl;
  std::unique_ptr<Impl> m_impl;
};

} // namespace nac::crypto

#endif // NAC_CRYPTO_RNG_HPP
