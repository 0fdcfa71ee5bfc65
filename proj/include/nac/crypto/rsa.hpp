#ifndef NAC_CRYPTO_RSA_HPP
#define NAC_CRYPTO_RSA_HPP

#include "nac/crypto/envelope.hpp"
#include "nac/crypto/rng.hpp"

namespace nac::crypto {

constexpr int RSA_MODULUS_BITS = 2048;

/// Largest OAEP-SHA256 payload for a 2048-bit modulus: 256 - 2*32 - 2.
constexpr size_t OAEP_MAX_PAYLOAD = 190;

/// DER SubjectPublicKeyInfo.
struct RsaPublicKey
{
  Bytes der;

  friend bool
  operator==(const RsaPublicKey&, const RsaPublicKey&) = default;
};

/// DER PKCS#1 RSAPrivateKey.
struct RsaPrivateKey
{
  Bytes der;

  friend bool
  operator==(const RsaPrivateKey&, const RsaPrivateKey&) = default;
};

struct RsaKeyPair
{
  RsaPublicKey publicKey;
  RsaPrivateKey privateKey;
};

/// Primes are searched from candidates drawn from `rng`; same seed, same key.
RsaKeyPair
generateRsaKeyPair(Rng& rng, int bits = RSA_MODULUS_BITS);

/// RSA-OAEP-SHA256 (MGF1-SHA256, empty label). Throws PayloadTooLarge.
EncryptedEnvelope
wrapKey(const RsaPublicKey& key, ByteView payload, Rng& rng);

/// Throws DecryptFailed.
Bytes
unwrapKey(const RsaPrivateKey& key, const EncryptedEnvelope& env);

/**
 * Fresh AES-256 key wrapped under RSA plus the payload under AES-CBC; used
 * for anything larger than the OAEP capacity (private keys, ABE key blobs).
 */
struct HybridCiphertext
{
  EncryptedEnvelope wrappedKey;
  EncryptedEnvelope body;
};

HybridCiphertext
hybridEncrypt(const RsaPublicKey& key, ByteView payload, Rng& rng);

/// Throws DecryptFailed.
Bytes
hybridDecrypt(const RsaPrivateKey& key, const HybridCiphertext& ct);

/// Throws std::invalid_argument when the DER does not parse as an RSA key.
void
validateRsaPublicKey(const RsaPublicKey& key);

} // namespace nac::crypto

#endif // NAC_CRYPTO_RSA_HPP
