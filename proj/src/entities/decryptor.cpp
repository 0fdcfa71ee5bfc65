#include "nac/entities/decryptor.hpp"
#include "nac/entities/payloads.hpp"

namespace nac {

DecryptorBase::DecryptorBase(sim::Network& net, sim::NodeId node, IdentityKeyPair identity,
                             crypto::Rng rng, const TrustStore& trust,
                             crypto::RsaKeyPair encryptionKey, Component keyId, DecryptorConfig config)
  : Entity(net, std::move(node), std::move(identity), std::move(rng), trust, config.retry)
  , m_encryptionKey(std::move(encryptionKey))
  , m_keyId(std::move(keyId))
{
  naming::checkPrefix(prefix(), "decryptor");
}

void
DecryptorBase::clearKeyCaches()
{
  m_ckCache.clear();
}

Outcome<crypto::ContentKey>
DecryptorBase::makeCk(const naming::CkName& name, const Bytes& keyBytes)
{
  if (keyBytes.size() != crypto::AES_KEY_SIZE)
    return Outcome<crypto::ContentKey>::failure(ErrorCode::NotAuthorized, "unwrapped CK has wrong size");
  crypto::ContentKey ck;
  ck.ckId = name.ckId;
  std::copy(keyBytes.begin(), keyBytes.end(), ck.keyBytes.begin());
  return Outcome<crypto::ContentKey>::success(ck);
}

void
DecryptorBase::consume(const Name& contentName, ConsumeOptions options, ConsumeCallback done)
{
  InterestPacket interest;
  interest.name = contentName;
  interest.mustBeFresh = options.mustBeFresh;
  m_fetcher.fetch(interest, [this, contentName, done](const sim::FetchResult& r) {
    if (r.status != sim::FetchStatus::Satisfied) {
      done(Outcome<Bytes>::failure(ErrorCode::FetchTimeout, "content " + contentName.toUri()));
      return;
    }
    if (!m_crypto.verify(m_trust, r.data)) {
      done(Outcome<Bytes>::failure(ErrorCode::SignatureInvalid, "content " + contentName.toUri()));
      return;
    }
    ContentPayload payload;
    naming::CkName ckName;
    try {
      payload = ContentPayload::decode(r.data.content);
      ckName = naming::parseCkName(payload.ckName);
    }
    catch (const std::exception& e) {
      done(Outcome<Bytes>::failure(ErrorCode::DecryptFailed, e.what()));
      return;
    }

    auto cached = m_ckCache.find(payload.ckName);
    if (cached != m_ckCache.end()) {
      decryptWith(cached->second, payload.iv, payload.ciphertext, done);
      return;
    }

    auto haveCk = [this, payload, done](const Outcome<crypto::ContentKey>& ck) {
      if (!ck.ok()) {
        done(Outcome<Bytes>::failure(ck.error->code, ck.error->detail));
        return;
      }
      m_ckCache[payload.ckName] = *ck.value;
      decryptWith(*ck.value, payload.iv, payload.ciphertext, done);
    };

    if (payload.embeddedCk) {
      try {
        auto ckData = naming::parseCkDataName(payload.embeddedCk->ckDataName);
        if (ckData.ck != ckName)
          throw std::invalid_argument("embedded CK does not match CK name");
        unwrapCk(ckData, payload.embeddedCk->wrappedCk, haveCk);
      }
      catch (const std::exception& e) {
        done(Outcome<Bytes>::failure(ErrorCode::DecryptFailed, e.what()));
      }
      return;
    }

    InterestPacket ckInterest;
    ckInterest.name = payload.ckName;
    ckInterest.canBePrefix = true;
    m_fetcher.fetch(ckInterest, [this, ckName, haveCk, done](const sim::FetchResult& cr) {
      if (cr.status != sim::FetchStatus::Satisfied) {
        done(Outcome<Bytes>::failure(ErrorCode::FetchTimeout, "CK " + ckName.toName().toUri()));
        return;
      }
      if (!m_crypto.verify(m_trust, cr.data)) {
        done(Outcome<Bytes>::failure(ErrorCode::SignatureInvalid, "CK " + cr.data.name.toUri()));
        return;
      }
      naming::CkDataName ckData;
      CkPayload ckPayload;
      try {
        ckData = naming::parseCkDataName(cr.data.name);
        if (ckData.ck != ckName)
          throw std::invalid_argument("CK Data for a different CK");
        ckPayload = CkPayload::decode(cr.data.content);
      }
      catch (const std::exception& e) {
        done(Outcome<Bytes>::failure(ErrorCode::DecryptFailed, e.what()));
        return;
      }
      unwrapCk(ckData, ckPayload.wrappedCk, haveCk);
    });
  });
}

void
DecryptorBase::decryptWith(const crypto::ContentKey& ck, const Bytes& iv, const Bytes& ciphertext,
                           ConsumeCallback done)
{
  try {
    crypto::EncryptedEnvelope env{crypto::EnvelopeScheme::AesCbc, iv, ciphertext};
    done(Outcome<Bytes>::success(m_crypto.decryptContent(ck, env)));
  }
  catch (const std::exception&) {
    done(Outcome<Bytes>::failure(ErrorCode::DecryptFailed, "content decryption failed"));
  }
}

void
Decryptor::clearKeyCaches()
{
  DecryptorBase::clearKeyCaches();
  m_kdkCache.clear();
}

void
Decryptor::unwrapCk(const naming::CkDataName& ckData, const crypto::EncryptedEnvelope& wrapped,
                    CkCallback done)
{
  Name kdkName = naming::kekToKdkDataName(ckData.kek, prefix(), m_keyId).toName();
  auto cached = m_kdkCache.find(kdkName);
  if (cached != m_kdkCache.end()) {
    unwrapWithKdk(ckData, wrapped, cached->second, done);
    return;
  }

  InterestPacket interest;
  interest.name = kdkName;
  m_fetcher.fetch(interest, [this, kdkName, ckData, wrapped, done](const sim::FetchResult& r) {
    if (r.status != sim::FetchStatus::Satisfied) {
      done(Outcome<crypto::ContentKey>::failure(ErrorCode::NotAuthorized, "no KDK " + kdkName.toUri()));
      return;
    }
    if (!m_crypto.verify(m_trust, r.data)) {
      done(Outcome<crypto::ContentKey>::failure(ErrorCode::SignatureInvalid, "KDK " + kdkName.toUri()));
      return;
    }
    crypto::RsaPrivateKey kdk;
    try {
      kdk.der = m_crypto.hybridDecrypt(m_encryptionKey.privateKey, HybridPayload::decode(r.data.content).ct);
    }
    catch (const std::exception&) {
      done(Outcome<crypto::ContentKey>::failure(ErrorCode::NotAuthorized, "KDK unwrap failed"));
      return;
    }
    m_kdkCache[kdkName] = kdk;
    unwrapWithKdk(ckData, wrapped, kdk, done);
  });
}

void
Decryptor::unwrapWithKdk(const naming::CkDataName& ckData, const crypto::EncryptedEnvelope& wrapped,
                         const crypto::RsaPrivateKey& kdk, CkCallback done)
{
  Bytes keyBytes;
  try {
    keyBytes = m_crypto.unwrap(kdk, wrapped);
  }
  catch (const std::exception&) {
    done(Outcome<crypto::ContentKey>::failure(ErrorCode::NotAuthorized, "CK unwrap failed"));
    return;
  }
  done(makeCk(ckData.ck, keyBytes));
}

} // namespace nac
