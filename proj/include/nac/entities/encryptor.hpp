#ifndef NAC_ENTITIES_ENCRYPTOR_HPP
#define NAC_ENTITIES_ENCRYPTOR_HPP

#include "nac/entities/entity.hpp"
#include "nac/naming/conventions.hpp"

namespace nac {

struct EncryptorConfig
{
  Name producerPrefix;
  Name managerPrefix;
  Name granularity;
  /// Carry the wrapped CK inside the content Data instead of a CK Data.
  bool embedCk = false;
  RetryPolicy retry;
  /// How long a fetched KEK is used before rediscovery.
  Millis kekTtl = KEY_FRESHNESS;
};

struct ProduceReport
{
  std::vector<DataPacket> packets;
  naming::KekName kek;
};

using ProduceCallback = std::function<void(const Outcome<ProduceReport>&)>;

/**
 * Common encryptor: discovers the live KEK of its granularity, keeps one CK
 * per KEK, publishes encrypted content (and CK Data) into the repo of its
 * node. Subclasses decide what a KEK carries and how a CK is wrapped.
 */
class EncryptorBase : public Entity
{
public:
  EncryptorBase(sim::Network& net, sim::NodeId node, IdentityKeyPair identity, crypto::Rng rng,
                const TrustStore& trust, EncryptorConfig config);

  /// Publishes `<producer>/<suffix>`. Fails closed: on any error nothing
  /// is published.
  void
  produce(const Name& suffix, Bytes plaintext, ProduceCallback done);

  /// Poll the manager's NOTIFY Data; on a new epoch move to the announced
  /// KEK and re-produce every retained plaintext under its old name.
  void
  checkForReencrypt(ProduceCallback done);

  std::optional<naming::KekName>
  currentKek() const
  {
    return m_kek;
  }

  const EncryptorConfig&
  config() const noexcept
  {
    return m_config;
  }

  /// KEK discovery Interests sent so far.
  uint64_t
  kekInterests() const noexcept
  {
    return m_kekInterests;
  }

protected:
  /// Accept KEK Data content; throw to reject it.
  virtual void
  installKek(const naming::KekName& name, const DataPacket& data) = 0;

  virtual crypto::EncryptedEnvelope
  wrapCk(const crypto::ContentKey& ck) = 0;

private:
  using Continuation = std::function<void(std::optional<Error>)>;

  void
  withKek(Continuation cont);

  void
  acceptKek(const sim::FetchResult& r, std::optional<Name> expected, Continuation cont);

  void
  fetchExactKek(const Name& kekName, Continuation cont);

  std::optional<Error>
  encryptAndPublish(const Name& suffix, const Bytes& plaintext, ProduceReport& report);

  void
  reproduceAll(ProduceCallback done);

protected:
  EncryptorConfig m_config;

private:
  std::optional<naming::KekName> m_kek;
  Millis m_kekFetchedAt{0};
  std::optional<crypto::ContentKey> m_ck;
  std::optional<naming::CkDataName> m_ckDataName;
  std::optional<crypto::EncryptedEnvelope> m_wrappedCk;
  bool m_kekFetchInFlight = false;
  std::vector<Continuation> m_kekWaiters;
  std::map<Name, Bytes> m_retained; // suffix -> plaintext
  uint64_t m_notifiedEpoch = 0;
  bool m_notifyCheckPending = false;
  uint64_t m_kekInterests = 0;
};

/// NAC encryptor: the KEK is an RSA public key; CKs are wrapped with OAEP.
class Encryptor : public EncryptorBase
{
public:
  using EncryptorBase::EncryptorBase;

protected:
  void
  installKek(const naming::KekName& name, const DataPacket& data) override;

  crypto::EncryptedEnvelope
  wrapCk(const crypto::ContentKey& ck) override;

private:
  crypto::RsaPublicKey m_kekKey;
};

} // namespace nac

#endif // NAC_ENTITIES_ENCRYPTOR_HPP
