#ifndef NAC_ENTITIES_PAYLOADS_HPP
#define NAC_ENTITIES_PAYLOADS_HPP

#include "nac/crypto/rsa.hpp"
#include "nac/wire/name.hpp"

#include <optional>

namespace nac {

// Content layouts of the Data packets exchanged by NAC entities; see
// docs/payloads.md. Decoders throw tlv::Error.

/// Encrypted content: CK name, IV, AES-CBC ciphertext and, in single-packet
/// mode, the CK Data name plus the wrapped CK.
struct ContentPayload
{
  struct Embedded
  {
    Name ckDataName;
    crypto::EncryptedEnvelope wrappedCk;

    friend bool
    operator==(const Embedded&, const Embedded&) = default;
  };

  Name ckName;
  Bytes iv;
  Bytes ciphertext;
  std::optional<Embedded> embeddedCk;

  Bytes
  encode() const;

  static ContentPayload
  decode(ByteView wire);

  friend bool
  operator==(const ContentPayload&, const ContentPayload&) = default;
};

/// CK Data: the CK wrapped by the KEK (RSA-OAEP) or by CP-ABE.
struct CkPayload
{
  crypto::EncryptedEnvelope wrappedCk;

  Bytes
  encode() const;

  static CkPayload
  decode(ByteView wire);
};

/// KDK Data and attribute-key Data: RSA-wrapped AES key + AES-wrapped body.
struct HybridPayload
{
  crypto::HybridCiphertext ct;

  Bytes
  encode() const;

  static HybridPayload
  decode(ByteView wire);
};

/// Re-encryption notice: the epoch and the KEK to move to.
struct NotifyPayload
{
  uint64_t epoch = 0;
  Name kekName;

  Bytes
  encode() const;

  static NotifyPayload
  decode(ByteView wire);
};

} // namespace nac

#endif // NAC_ENTITIES_PAYLOADS_HPP
