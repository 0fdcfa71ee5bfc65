#ifndef NAC_CRYPTO_HASH_HPP
#define NAC_CRYPTO_HASH_HPP

#include "nac/common/bytes.hpp"

#include <array>

namespace nac::crypto {

using Digest = std::array<uint8_t, 32>;

Digest
sha256(ByteView data);

Digest
hmacSha256(ByteView key, ByteView data);

inline std::string
sha256Hex(ByteView data)
{
  return toHex(sha256(data));
}

} // namespace nac::crypto

#endif // NAC_CRYPTO_HASH_HPP
