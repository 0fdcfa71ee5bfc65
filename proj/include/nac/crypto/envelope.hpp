#ifndef NAC_CRYPTO_ENVELOPE_HPP
#define NAC_CRYPTO_ENVELOPE_HPP

#include "nac/common/bytes.hpp"

#include <cstdint>

namespace nac::crypto {

enum class EnvelopeScheme : uint8_t {
  AesCbc = 1,
  RsaOaep = 2,
  CpAbe = 3,
};

/**
 * Scheme tag plus opaque parameters (IV for AES-CBC, ABE header for CP-ABE,
 * empty for RSA-OAEP) and ciphertext.
 */
struct EncryptedEnvelope
{
  EnvelopeScheme scheme = EnvelopeScheme::AesCbc;
  Bytes params;
  Bytes ciphertext;

  /// Envelope TLV (type 130).
  Bytes
  encode() const;

  /// Throws tlv::Error on malformed input or unknown scheme.
  static EncryptedEnvelope
  decode(ByteView wire);

  friend bool
  operator==(const EncryptedEnvelope&, const EncryptedEnvelope&) = default;
};

} // namespace nac::crypto

#endif // NAC_CRYPTO_ENVELOPE_HPP
