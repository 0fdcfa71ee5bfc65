#include "nac/entities/access_manager.hpp"
#include "nac/entities/payloads.hpp"

namespace nac {

AccessManager::AccessManager(sim::Network& net, sim::NodeId node, IdentityKeyPair identity,
                             crypto::Rng rng, const TrustStore& trust, Options options)
  : Entity(net, std::move(node), std::move(identity), std::move(rng), trust)
  , m_options(options)
{
  naming::checkPrefix(prefix(), "manager");
}

void
AccessManager::definePolicy(const Name& granularity, std::vector<DecryptorCredential> authorized)
{
  naming::checkPrefix(granularity, "granularity");
  for (const auto& d : authorized)
    naming::checkPrefix(d.prefix, "decryptor");
  if (m_policies.count(granularity))
    throw DuplicateGranularity("granularity " + granularity.toUri() + " already defined");
  AccessPolicyEntry entry;
  entry.granularity = granularity;
  entry.authorized = std::move(authorized);
  publishEpoch(entry);
  m_policies.emplace(granularity, std::move(entry));
}

void
AccessManager::reportCompromised(const Name& decryptorPrefix)
{
  m_compromised.insert(decryptorPrefix);
}

void
AccessManager::rotate(const Name& granularity)
{
  auto it = m_policies.find(granularity);
  if (it == m_policies.end())
    throw UnknownGranularity("no policy for " + granularity.toUri());
  AccessPolicyEntry& entry = it->second;
  std::erase_if(entry.authorized,
                [this](const DecryptorCredential& d) { return m_compromised.count(d.prefix) > 0; });
  ++entry.epoch;
  publishEpoch(entry);
}

void
AccessManager::triggerReencrypt(const Name& granularity)
{
  const AccessPolicyEntry& entry = policy(granularity);
  if (entry.epoch == 0)
    throw InvalidState("re-encryption requires a prior rotation of " + granularity.toUri());
  NotifyPayload notice{entry.epoch, entry.kekName.toName()};
  signAndPublish(naming::makeNotifyName(prefix(), granularity, entry.epoch), notice.encode(),
                 NOTIFY_FRESHNESS);
}

const AccessPolicyEntry&
AccessManager::policy(const Name& granularity) const
{
  auto it = m_policies.find(granularity);
  if (it == m_policies.end())
    throw UnknownGranularity("no policy for " + granularity.toUri());
  return it->second;
}

std::vector<Name>
AccessManager::granularities() const
{
  std::vector<Name> out;
  for (const auto& [g, e] : m_policies)
    out.push_back(g);
  return out;
}

void
AccessManager::publishEpoch(AccessPolicyEntry& entry)
{
  entry.kekPair = m_crypto.generateRsa();
  entry.kekName = naming::makeKekName(prefix(), entry.granularity, crypto::randomKeyId(m_crypto.rng()));
  entry.history.push_back(entry.kekName);

  signAndPublish(entry.kekName.toName(), entry.kekPair.publicKey.der, KEY_FRESHNESS);
  ++m_kekPublished;

  for (const auto& d : entry.authorized) {
    auto kdkName = naming::kekToKdkDataName(entry.kekName, d.prefix, d.keyId);
    HybridPayload payload{m_crypto.hybridEncrypt(d.publicKey, entry.kekPair.privateKey.der)};
    signAndPublish(kdkName.toName(), payload.encode(), KEY_FRESHNESS);
    ++m_kdkPublished;
  }
}

} // namespace nac
