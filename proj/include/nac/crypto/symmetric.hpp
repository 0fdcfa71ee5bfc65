#ifndef NAC_CRYPTO_SYMMETRIC_HPP
#define NAC_CRYPTO_SYMMETRIC_HPP

#include "nac/crypto/envelope.hpp"
#include "nac/crypto/rng.hpp"
#include "nac/wire/name.hpp"

#include <array>

namespace nac::crypto {

constexpr size_t AES_KEY_SIZE = 32;
constexpr size_t AES_BLOCK_SIZE = 16;
constexpr size_t GCM_IV_SIZE = 12;
constexpr size_t GCM_TAG_SIZE = 16;

using AesKey = std::array<uint8_t, AES_KEY_SIZE>;

/// Symmetric key that encrypts content; ck_id is 8 random bytes, hex.
struct ContentKey
{
  Component ckId;
  AesKey keyBytes{};

  friend bool
  operator==(const ContentKey&, const ContentKey&) = default;
};

/// 8 random bytes rendered as 16 lowercase hex characters.
Component
randomKeyId(Rng& rng);

ContentKey
generateCk(Rng& rng);

AesKey
randomAesKey(Rng& rng);

/// AES-256-CBC, PKCS#7 padding.
Bytes
aesCbcEncrypt(const AesKey& key, ByteView iv, ByteView plaintext);

/// Throws DecryptFailed on any failure.
Bytes
aesCbcDecrypt(const AesKey& key, ByteView iv, ByteView ciphertext);

/// AES-256-GCM; returns ciphertext || 16-byte tag.
Bytes
aesGcmSeal(const AesKey& key, ByteView iv, ByteView plaintext);

/// Throws DecryptFailed on tag mismatch or truncation.
Bytes
aesGcmOpen(const AesKey& key, ByteView iv, ByteView sealed);

/// AES-CBC envelope with a fresh 16-byte IV in params.
EncryptedEnvelope
encryptContent(const AesKey& key, ByteView plaintext, Rng& rng);

inline EncryptedEnvelope
encryptContent(const ContentKey& ck, ByteView plaintext, Rng& rng)
{
  return encryptContent(ck.keyBytes, plaintext, rng);
}

Bytes
decryptContent(const AesKey& key, const EncryptedEnvelope& env);

inline Bytes
decryptContent(const ContentKey& ck, const EncryptedEnvelope& env)
{
  return decryptContent(ck.keyBytes, env);
}

} // namespace nac::crypto

#endif // NAC_CRYPTO_SYMMETRIC_HPP
