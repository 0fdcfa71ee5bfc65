#ifndef NAC_CRYPTO_ECDSA_HPP
#define NAC_CRYPTO_ECDSA_HPP

#include "nac/crypto/rng.hpp"

namespace nac::crypto {

/// P-256 key pair: 65-byte uncompressed public point, 32-byte scalar.
struct EcKeyPair
{
  Bytes publicKey;
  Bytes privateKey;
};

EcKeyPair
generateEcKeyPair(Rng& rng);

/**
 * ECDSA-P256-SHA256 signature in DER form. The per-signature nonce is
 * derived deterministically from the key and message digest (RFC 6979),
 * so signing is a pure function of its inputs.
 */
Bytes
ecdsaSign(ByteView privateKey, ByteView message);

/// Verification goes through OpenSSL's standard EVP path. Malformed keys or
/// signatures yield false.
bool
ecdsaVerify(ByteView publicKey, ByteView message, ByteView signature) noexcept;

} // namespace nac::crypto

#endif // NAC_CRYPTO_ECDSA_HPP
