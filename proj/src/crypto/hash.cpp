#include "nac/crypto/hash.hpp"
#include "nac/crypto/errors.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

namespace nac::crypto {

Digest
sha256(ByteView data)
{
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1)
    throw ProviderError("EVP_Digest failed");
  return out;
}

Digest
hmacSha256(ByteView key, ByteView data)
{
  Digest out{};
  unsigned int len = 0;
  if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(),
           out.data(), &len) == nullptr)
    throw ProviderError("HMAC failed");
  return out;
}

} // namespace nac::crypto
