#ifndef NAC_ENTITIES_ACCESS_MANAGER_HPP
#define NAC_ENTITIES_ACCESS_MANAGER_HPP

#include "nac/entities/entity.hpp"
#include "nac/naming/conventions.hpp"

#include <set>

namespace nac {

/// Freshness of re-encryption notices; short so polls bypass stale caches.
constexpr Millis NOTIFY_FRESHNESS{1000};

struct AccessPolicyEntry
{
  Name granularity;
  std::vector<DecryptorCredential> authorized;
  uint64_t epoch = 0;
  naming::KekName kekName;
  crypto::RsaKeyPair kekPair;
  /// KEK name of every epoch so far, index = epoch.
  std::vector<naming::KekName> history;
};

/**
 * Defines who may read each granularity: generates one KEK/KDK pair per
 * (granularity, epoch), publishes the KEK in plaintext and the KDK once per
 * authorized decryptor, encrypted to that decryptor.
 */
class AccessManager : public Entity
{
public:
  struct Options
  {
    Millis epochDuration{24LL * 3600 * 1000};
  };

  AccessManager(sim::Network& net, sim::NodeId node, IdentityKeyPair identity, crypto::Rng rng,
                const TrustStore& trust, Options options);

  AccessManager(sim::Network& net, sim::NodeId node, IdentityKeyPair identity, crypto::Rng rng,
                const TrustStore& trust)
    : AccessManager(net, std::move(node), std::move(identity), std::move(rng), trust, Options{})
  {
  }

  /// Throws DuplicateGranularity or naming::NameConventionViolation.
  void
  definePolicy(const Name& granularity, std::vector<DecryptorCredential> authorized);

  /// The decryptor loses access from the next rotation on.
  void
  reportCompromised(const Name& decryptorPrefix);

  /// New epoch and key pair. Throws UnknownGranularity.
  void
  rotate(const Name& granularity);

  /// Publish `<manager>/NAC/<granularity>/NOTIFY/<epoch>`. Throws
  /// UnknownGranularity, or InvalidState when the granularity never rotated.
  void
  triggerReencrypt(const Name& granularity);

  const AccessPolicyEntry&
  policy(const Name& granularity) const;

  std::vector<Name>
  granularities() const;

  const Options&
  options() const noexcept
  {
    return m_options;
  }

  uint64_t
  kekPublished() const noexcept
  {
    return m_kekPublished;
  }

  uint64_t
  kdkPublished() const noexcept
  {
    return m_kdkPublished;
  }

private:
  void
  publishEpoch(AccessPolicyEntry& entry);

private:
  Options m_options;
  std::map<Name, AccessPolicyEntry> m_policies;
  std::set<Name> m_compromised;
  uint64_t m_kekPublished = 0;
  uint64_t m_kdkPublished = 0;
};

} // namespace nac

#endif // NAC_ENTITIES_ACCESS_MANAGER_HPP
