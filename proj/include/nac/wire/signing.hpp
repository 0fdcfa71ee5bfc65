#ifndef NAC_WIRE_SIGNING_HPP
#define NAC_WIRE_SIGNING_HPP

#include "nac/crypto/rng.hpp"
#include "nac/wire/packet.hpp"

#include <optional>

namespace nac {

/// An entity's ECDSA-P256 signing key, named `<identity>/KEY/<key-id>`.
struct IdentityKeyPair
{
  Name identityName;
  Component keyId;
  Bytes publicKey;
  Bytes privateKey;

  Name
  keyName() const
  {
    return Name(identityName).append("KEY").append(keyId);
  }
};

IdentityKeyPair
generateIdentity(const Name& identity, crypto::Rng& rng);

/// Key name `<identity>/KEY/<id>` -> identity; nullopt if not of that shape.
std::optional<Name>
identityOfKeyName(const Name& keyName);

DataPacket
signData(Name name, Bytes content, Millis freshness, const IdentityKeyPair& signer);

/// Re-sign an already populated packet in place (key locator is overwritten).
void
sign(DataPacket& data, const IdentityKeyPair& signer);

bool
verifyData(const DataPacket& data, ByteView publicKey) noexcept;

} // namespace nac

#endif // NAC_WIRE_SIGNING_HPP
