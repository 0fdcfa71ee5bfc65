#include "nac/abe/abe_encryptor.hpp"

namespace nac {

void
AbeEncryptor::installKek(const naming::KekName& name, const DataPacket& data)
{
  auto policy = crypto::parsePolicy(name.keyId.toString());
  auto params = crypto::AbePublicParams::decode(data.content);
  crypto::abeProvider(params.providerId); // rejects unknown providers
  m_params = std::move(params);
  m_policy = std::move(policy);
}

crypto::EncryptedEnvelope
AbeEncryptor::wrapCk(const crypto::ContentKey& ck)
{
  return m_crypto.abeEncrypt(m_params, *m_policy, ck.keyBytes);
}

} // namespace nac
