#ifndef NAC_ENTITIES_DECRYPTOR_HPP
#define NAC_ENTITIES_DECRYPTOR_HPP

#include "nac/entities/entity.hpp"
#include "nac/naming/conventions.hpp"

namespace nac {

struct DecryptorConfig
{
  RetryPolicy retry;
};

struct ConsumeOptions
{
  /// Skip cached copies older than their freshness period.
  bool mustBeFresh = false;
};

using ConsumeCallback = std::function<void(const Outcome<Bytes>&)>;
using CkCallback = std::function<void(const Outcome<crypto::ContentKey>&)>;

/**
 * Common decryptor: fetches the content, then (unless the CK is cached)
 * the CK Data named in it, and hands the wrapped CK to the subclass.
 * Every Data packet along the chain must verify; any failure aborts.
 */
class DecryptorBase : public Entity
{
public:
  DecryptorBase(sim::Network& net, sim::NodeId node, IdentityKeyPair identity, crypto::Rng rng,
                const TrustStore& trust, crypto::RsaKeyPair encryptionKey, Component keyId,
                DecryptorConfig config = {});

  void
  consume(const Name& contentName, ConsumeOptions options, ConsumeCallback done);

  void
  consume(const Name& contentName, ConsumeCallback done)
  {
    consume(contentName, ConsumeOptions{}, std::move(done));
  }

  DecryptorCredential
  credential() const
  {
    return {prefix(), m_keyId, m_encryptionKey.publicKey};
  }

  /// Drop every cached key (CKs, KDKs, subclass state).
  virtual void
  clearKeyCaches();

  size_t
  cachedCkCount() const noexcept
  {
    return m_ckCache.size();
  }

protected:
  /// Recover the CK wrapped for `ckData`; failures are NotAuthorized or
  /// SignatureInvalid as appropriate.
  virtual void
  unwrapCk(const naming::CkDataName& ckData, const crypto::EncryptedEnvelope& wrapped,
           CkCallback done) = 0;

  static Outcome<crypto::ContentKey>
  makeCk(const naming::CkName& name, const Bytes& keyBytes);

private:
  void
  decryptWith(const crypto::ContentKey& ck, const Bytes& iv, const Bytes& ciphertext,
              ConsumeCallback done);

protected:
  crypto::RsaKeyPair m_encryptionKey;
  Component m_keyId;
  std::map<Name, crypto::ContentKey> m_ckCache; // CK name -> key
};

/// NAC decryptor: obtains the KDK addressed to it and unwraps CKs with it.
class Decryptor : public DecryptorBase
{
public:
  using DecryptorBase::DecryptorBase;

  void
  clearKeyCaches() override;

  size_t
  cachedKdkCount() const noexcept
  {
    return m_kdkCache.size();
  }

protected:
  void
  unwrapCk(const naming::CkDataName& ckData, const crypto::EncryptedEnvelope& wrapped,
           CkCallback done) override;

private:
  void
  unwrapWithKdk(const naming::CkDataName& ckData, const crypto::EncryptedEnvelope& wrapped,
                const crypto::RsaPrivateKey& kdk, CkCallback done);

private:
  std::map<Name, crypto::RsaPrivateKey> m_kdkCache; // KDK name -> private key
};

} // namespace nac

#endif // NAC_ENTITIES_DECRYPTOR_HPP
