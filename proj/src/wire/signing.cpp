#include "nac/wire/signing.hpp"
#include "nac/crypto/ecdsa.hpp"
#include "nac/crypto/symmetric.hpp"

namespace nac {

IdentityKeyPair
generateIdentity(const Name& identity, crypto::Rng& rng)
{
  IdentityKeyPair id;
  id.identityName = identity;
  id.keyId = crypto::randomKeyId(rng);
  auto kp = crypto::generateEcKeyPair(rng);
  id.publicKey = std::move(kp.publicKey);
  id.privateKey = std::move(kp.privateKey);
  return id;
}

std::optional<Name>
identityOfKeyName(const Name& keyName)
{
  if (keyName.size() < 2 || keyName[keyName.size() - 2] != Component("KEY"))
    return std::nullopt;
  return keyName.getPrefix(keyName.size() - 2);
}

void
sign(DataPacket& data, const IdentityKeyPair& signer)
{
  data.keyLocator = signer.keyName();
  data.signatureType = SignatureType::Sha256Ecdsa;
  data.signatureValue = crypto::ecdsaSign(signer.privateKey, signedPortion(data));
}

DataPacket
signData(Name name, Bytes content, Millis freshness, const IdentityKeyPair& signer)
{
  DataPacket data;
  data.name = std::move(name);
  data.content = std::move(content);
  data.freshnessPeriod = freshness;
  sign(data, signer);
  return data;
}

bool
verifyData(const DataPacket& data, ByteView publicKey) noexcept
{
  if (data.signatureType != SignatureType::Sha256Ecdsa)
    return false;
  try {
    return crypto::ecdsaVerify(publicKey, signedPortion(data), data.signatureValue);
  }
  catch (...) {
    return false;
  }
}

} // namespace nac
