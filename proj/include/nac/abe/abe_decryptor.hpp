#ifndef NAC_ABE_ABE_DECRYPTOR_HPP
#define NAC_ABE_ABE_DECRYPTOR_HPP

#include "nac/entities/decryptor.hpp"

namespace nac {

/**
 * NAC-ABE decryptor. Reads the policy from the KEK name a CK Data refers
 * to; if the attribute key it holds does not satisfy it, asks the
 * authority for each missing leaf in turn until one answer yields a key
 * bundle that does.
 */
class AbeDecryptor : public DecryptorBase
{
public:
  AbeDecryptor(sim::Network& net, sim::NodeId node, IdentityKeyPair identity, crypto::Rng rng,
               const TrustStore& trust, crypto::RsaKeyPair encryptionKey, Component keyId,
               Name authorityPrefix, DecryptorConfig config = {});

  /// Install an attribute-key Data obtained out of band. Returns false if
  /// it fails verification or decryption.
  bool
  installAttributeKey(const DataPacket& data);

  const std::optional<crypto::AbeUserKey>&
  attributeKey() const noexcept
  {
    return m_userKey;
  }

  void
  clearKeyCaches() override;

  uint64_t
  attributeInterests() const noexcept
  {
    return m_attributeInterests;
  }

protected:
  void
  unwrapCk(const naming::CkDataName& ckData, const crypto::EncryptedEnvelope& wrapped,
           CkCallback done) override;

private:
  void
  requestLeaves(std::vector<std::string> pending, std::shared_ptr<const crypto::PolicyExpr> policy,
                naming::CkDataName ckData, crypto::EncryptedEnvelope wrapped, CkCallback done);

  void
  decryptWithKey(const naming::CkDataName& ckData, const crypto::EncryptedEnvelope& wrapped,
                 CkCallback done);

  std::optional<crypto::AbeUserKey>
  openKeyData(const DataPacket& data, bool verified);

  std::vector<std::string>
  missingLeaves(const crypto::PolicyExpr& policy) const;

private:
  Name m_authority;
  std::optional<crypto::AbeUserKey> m_userKey;
  uint64_t m_attributeInterests = 0;
};

} // namespace nac

#endif // NAC_ABE_ABE_DECRYPTOR_HPP
