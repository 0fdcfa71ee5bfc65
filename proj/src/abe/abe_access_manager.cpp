#include "nac/abe/abe_access_manager.hpp"

namespace nac {

std::string
renderPolicyForWindow(std::string_view policyText, std::string_view windowLabel)
{
  auto policy = crypto::parsePolicy(policyText);
  if (!windowLabel.empty())
    policy = crypto::mapLeaves(policy, [&](const std::string& leaf) {
      return leaf + "-" + std::string(windowLabel);
    });
  return crypto::renderPolicy(policy);
}

AbeAccessManager::AbeAccessManager(sim::Network& net, sim::NodeId node, IdentityKeyPair identity,
                                   crypto::Rng rng, const TrustStore& trust,
                                   crypto::AbePublicParams params)
  : Entity(net, std::move(node), std::move(identity), std::move(rng), trust)
  , m_params(std::move(params))
{
  naming::checkPrefix(prefix(), "manager");
}

naming::KekName
AbeAccessManager::publishPolicyKek(const Name& granularity, std::string_view policyText,
                                   std::string_view windowLabel)
{
  std::string keyId = renderPolicyForWindow(policyText, windowLabel);
  auto kek = naming::makeKekName(prefix(), granularity, Component(keyId));
  signAndPublish(kek.toName(), m_params.encode(), KEY_FRESHNESS);
  ++m_kekPublished;
  m_current[granularity] = kek;
  return kek;
}

std::optional<naming::KekName>
AbeAccessManager::currentKek(const Name& granularity) const
{
  auto it = m_current.find(granularity);
  if (it == m_current.end())
    return std::nullopt;
  return it->second;
}

} // namespace nac
