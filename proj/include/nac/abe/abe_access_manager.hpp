#ifndef NAC_ABE_ABE_ACCESS_MANAGER_HPP
#define NAC_ABE_ABE_ACCESS_MANAGER_HPP

#include "nac/crypto/policy.hpp"
#include "nac/entities/entity.hpp"
#include "nac/naming/conventions.hpp"

namespace nac {

/**
 * NAC-ABE access manager: one KEK per (granularity, policy). The KEK's
 * key-id is the canonical policy text and its content the ABE public
 * parameters.
 */
class AbeAccessManager : public Entity
{
public:
  AbeAccessManager(sim::Network& net, sim::NodeId node, IdentityKeyPair identity, crypto::Rng rng,
                   const TrustStore& trust, crypto::AbePublicParams params);

  /**
   * Leaves are rendered `<leaf>-<windowLabel>` when a label is given.
   * Throws crypto::PolicySyntaxError or naming::NameConventionViolation.
   */
  naming::KekName
  publishPolicyKek(const Name& granularity, std::string_view policyText,
                   std::string_view windowLabel = {});

  uint64_t
  kekPublished() const noexcept
  {
    return m_kekPublished;
  }

  std::optional<naming::KekName>
  currentKek(const Name& granularity) const;

private:
  crypto::AbePublicParams m_params;
  std::map<Name, naming::KekName> m_current;
  uint64_t m_kekPublished = 0;
};

/// Canonical key-id of `policyText` with every leaf rendered for `windowLabel`.
std::string
renderPolicyForWindow(std::string_view policyText, std::string_view windowLabel);

} // namespace nac

#endif // NAC_ABE_ABE_ACCESS_MANAGER_HPP
