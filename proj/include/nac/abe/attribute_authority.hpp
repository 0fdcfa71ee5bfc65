#ifndef NAC_ABE_ATTRIBUTE_AUTHORITY_HPP
#define NAC_ABE_ATTRIBUTE_AUTHORITY_HPP

#include "nac/entities/entity.hpp"
#include "nac/naming/conventions.hpp"

#include <set>

namespace nac {

/// Attribute with a validity window; rendered `<base>-<window>` (or just
/// `<base>` when the window label is empty).
struct TimedAttribute
{
  std::string base;
  std::string window;
  Millis validFrom{0};
  Millis validTo = Millis::max();

  std::string
  rendered() const
  {
    return window.empty() ? base : base + "-" + window;
  }

  bool
  validAt(Millis t) const noexcept
  {
    return validFrom <= t && t < validTo;
  }
};

class AttributeNotGranted : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class WindowExpired : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Freshness of a "not granted" answer.
constexpr Millis DECLINE_FRESHNESS{1000};

/**
 * Holds the ABE master key and issues attribute keys. Answers Interests
 * under `<authority>/ATTRIBUTE` with one bundle key covering every
 * currently valid attribute of the requester, encrypted to the requester's
 * registered RSA key. A request for an attribute the requester does not
 * hold in the current window gets a signed Data with empty content.
 */
class AttributeAuthority : public Entity
{
public:
  AttributeAuthority(sim::Network& net, sim::NodeId node, IdentityKeyPair identity, crypto::Rng rng,
                     const TrustStore& trust, std::string_view providerId);

  const crypto::AbePublicParams&
  publicParams() const noexcept
  {
    return m_params;
  }

  void
  registerDecryptor(const DecryptorCredential& credential, std::vector<TimedAttribute> attributes);

  /**
   * Issue (or re-serve) the requester's key bundle, named after
   * `requestedAttribute` (default: the first current attribute).
   * Throws AttributeNotGranted or WindowExpired.
   */
  DataPacket
  issue(const Name& decryptorPrefix, std::string_view requestedAttribute = {});

  /// Bundles generated, one per (decryptor, attribute set).
  uint64_t
  issuedKeyData() const noexcept
  {
    return m_issued;
  }

  /// Attribute-key Data packets signed, aliases included.
  uint64_t
  keyDataPackets() const noexcept
  {
    return m_keyPackets;
  }

  uint64_t
  declined() const noexcept
  {
    return m_declined;
  }

private:
  void
  onInterest(const InterestPacket& interest);

  DataPacket
  makeKeyData(const Name& decryptorPrefix, std::string_view requestedAttribute, bool reply);

private:
  struct Registration
  {
    DecryptorCredential credential;
    std::vector<TimedAttribute> attributes;
  };

  crypto::AbePublicParams m_params;
  crypto::AbeMasterKey m_master;
  std::map<Name, Registration> m_registry;
  std::map<std::pair<Name, std::set<std::string>>, Bytes> m_bundles; // encrypted payloads
  uint64_t m_issued = 0;
  uint64_t m_keyPackets = 0;
  uint64_t m_declined = 0;
};

} // namespace nac

#endif // NAC_ABE_ATTRIBUTE_AUTHORITY_HPP
