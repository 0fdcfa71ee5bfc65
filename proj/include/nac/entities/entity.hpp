#ifndef NAC_ENTITIES_ENTITY_HPP
#define NAC_ENTITIES_ENTITY_HPP

#include "nac/entities/crypto_engine.hpp"
#include "nac/entities/fetcher.hpp"

namespace nac {

/// An RSA encryption key a decryptor registers with a manager or authority.
struct DecryptorCredential
{
  Name prefix;
  Component keyId;
  crypto::RsaPublicKey publicKey;

  Name
  keyName() const
  {
    return Name(prefix).append("KEY").append(keyId);
  }
};

/**
 * State shared by every role: an application face on one node, a signing
 * identity, a crypto engine and a retrying fetcher.
 */
class Entity
{
public:
  Entity(sim::Network& net, sim::NodeId node, IdentityKeyPair identity, crypto::Rng rng,
         const TrustStore& trust, RetryPolicy retry = {});

  virtual
  ~Entity() = default;

  Entity(const Entity&) = delete;
  Entity& operator=(const Entity&) = delete;

  const Name&
  prefix() const noexcept
  {
    return m_identity.identityName;
  }

  const IdentityKeyPair&
  identity() const noexcept
  {
    return m_identity;
  }

  const sim::NodeId&
  node() const noexcept
  {
    return m_node;
  }

  sim::AppId
  app() const noexcept
  {
    return m_app;
  }

  const CryptoOpCounter&
  counter() const noexcept
  {
    return m_crypto.counter();
  }

  /// Names of all Interests this entity expressed.
  const std::vector<Name>&
  expressedInterests() const noexcept
  {
    return m_fetcher.expressedNames();
  }

  /// Every Data packet this entity signed and released.
  const std::vector<DataPacket>&
  published() const noexcept
  {
    return m_published;
  }

protected:
  DataPacket
  signAndPublish(Name name, Bytes content, Millis freshness);

  DataPacket
  signAndReply(Name name, Bytes content, Millis freshness);

protected:
  sim::Network& m_net;
  sim::NodeId m_node;
  sim::AppId m_app;
  IdentityKeyPair m_identity;
  CryptoEngine m_crypto;
  const TrustStore& m_trust;
  Fetcher m_fetcher;
  std::vector<DataPacket> m_published;
};

} // namespace nac

#endif // NAC_ENTITIES_ENTITY_HPP
