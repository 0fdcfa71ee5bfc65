#include "nac/abe/abe_decryptor.hpp"
#include "nac/entities/payloads.hpp"

namespace nac {

AbeDecryptor::AbeDecryptor(sim::Network& net, sim::NodeId node, IdentityKeyPair identity,
                           crypto::Rng rng, const TrustStore& trust, crypto::RsaKeyPair encryptionKey,
                           Component keyId, Name authorityPrefix, DecryptorConfig config)
  : DecryptorBase(net, std::move(node), std::move(identity), std::move(rng), trust,
                  std::move(encryptionKey), std::move(keyId), config)
  , m_authority(std::move(authorityPrefix))
{
  naming::checkPrefix(m_authority, "authority");
}

void
AbeDecryptor::clearKeyCaches()
{
  DecryptorBase::clearKeyCaches();
  m_userKey.reset();
}

bool
AbeDecryptor::installAttributeKey(const DataPacket& data)
{
  auto key = openKeyData(data, false);
  if (!key)
    return false;
  m_userKey = std::move(key);
  return true;
}

std::optional<crypto::AbeUserKey>
AbeDecryptor::openKeyData(const DataPacket& data, bool verified)
{
  if (data.content.empty() || (!verified && !m_crypto.verify(m_trust, data)))
    return std::nullopt;
  try {
    auto req = naming::parseAttributeInterestName(data.name);
    if (req.decryptor != prefix() || req.decryptorKeyId != m_keyId)
      return std::nullopt;
    auto plain = m_crypto.hybridDecrypt(m_encryptionKey.privateKey,
                                        HybridPayload::decode(data.content).ct);
    return crypto::AbeUserKey::decode(plain);
  }
  catch (const std::exception&) {
    return std::nullopt;
  }
}

std::vector<std::string>
AbeDecryptor::missingLeaves(const crypto::PolicyExpr& policy) const
{
  std::vector<std::string> out;
  for (const auto& leaf : crypto::policyLeaves(policy))
    if (!m_userKey || !m_userKey->attributes.count(leaf))
      out.push_back(leaf);
  return out;
}

void
AbeDecryptor::unwrapCk(const naming::CkDataName& ckData, const crypto::EncryptedEnvelope& wrapped,
                       CkCallback done)
{
  std::shared_ptr<const crypto::PolicyExpr> policy;
  try {
    auto fromName = crypto::parsePolicy(ckData.kek.keyId.toString());
    if (crypto::renderPolicy(fromName) != crypto::renderPolicy(crypto::abeEnvelopePolicy(wrapped)))
      throw std::invalid_argument("CK envelope policy differs from KEK name");
    policy = std::make_shared<const crypto::PolicyExpr>(std::move(fromName));
  }
  catch (const std::exception& e) {
    done(Outcome<crypto::ContentKey>::failure(ErrorCode::DecryptFailed, e.what()));
    return;
  }

  if (m_userKey && crypto::satisfies(m_userKey->attributes, *policy)) {
    decryptWithKey(ckData, wrapped, done);
    return;
  }
  requestLeaves(missingLeaves(*policy), policy, ckData, wrapped, done);
}

void
AbeDecryptor::requestLeaves(std::vector<std::string> pending,
                            std::shared_ptr<const crypto::PolicyExpr> policy,
                            naming::CkDataName ckData, crypto::EncryptedEnvelope wrapped,
                            CkCallback done)
{
  if (pending.empty()) {
    done(Outcome<crypto::ContentKey>::failure(ErrorCode::NotAuthorized,
                                              "attributes do not satisfy " + crypto::renderPolicy(*policy)));
    return;
  }
  std::string leaf = pending.front();
  pending.erase(pending.begin());

  InterestPacket interest;
  try {
    interest.name = naming::makeAttributeInterestName(m_authority, leaf, prefix(), m_keyId).toName();
  }
  catch (const std::exception&) {
    requestLeaves(std::move(pending), policy, std::move(ckData), std::move(wrapped), std::move(done));
    return;
  }
  interest.mustBeFresh = true;
  ++m_attributeInterests;
  m_fetcher.fetch(interest, [=, this](const sim::FetchResult& r) mutable {
    if (r.status == sim::FetchStatus::Satisfied && !r.data.content.empty()) {
      if (!m_crypto.verify(m_trust, r.data)) {
        done(Outcome<crypto::ContentKey>::failure(ErrorCode::SignatureInvalid,
                                                  "attribute key " + r.data.name.toUri()));
        return;
      }
      if (auto key = openKeyData(r.data, true))
        m_userKey = std::move(key);
      if (m_userKey && crypto::satisfies(m_userKey->attributes, *policy)) {
        decryptWithKey(ckData, wrapped, done);
        return;
      }
      std::vector<std::string> rest;
      for (const auto& l : pending)
        if (!m_userKey || !m_userKey->attributes.count(l))
          rest.push_back(l);
      pending = std::move(rest);
    }
    requestLeaves(std::move(pending), policy, std::move(ckData), std::move(wrapped), std::move(done));
  });
}

void
AbeDecryptor::decryptWithKey(const naming::CkDataName& ckData, const crypto::EncryptedEnvelope& wrapped,
                             CkCallback done)
{
  Bytes keyBytes;
  try {
    keyBytes = m_crypto.abeDecrypt(*m_userKey, wrapped);
  }
  catch (const std::exception&) {
    done(Outcome<crypto::ContentKey>::failure(ErrorCode::NotAuthorized, "ABE decryption failed"));
    return;
  }
  done(makeCk(ckData.ck, keyBytes));
}

} // namespace nac
