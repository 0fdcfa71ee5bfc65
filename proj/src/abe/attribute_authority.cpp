#include "nac/abe/attribute_authority.hpp"
#include "nac/entities/payloads.hpp"

namespace nac {

AttributeAuthority::AttributeAuthority(sim::Network& net, sim::NodeId node, IdentityKeyPair identity,
                                       crypto::Rng rng, const TrustStore& trust,
                                       std::string_view providerId)
  : Entity(net, std::move(node), std::move(identity), std::move(rng), trust)
{
  naming::checkPrefix(prefix(), "authority");
  auto setup = m_crypto.abeSetup(providerId);
  m_params = std::move(setup.params);
  m_master = std::move(setup.master);
  m_net.registerPrefix(m_app, Name(prefix()).append(naming::marker::ATTRIBUTE),
                       [this](const InterestPacket& i) { onInterest(i); });
}

void
AttributeAuthority::registerDecryptor(const DecryptorCredential& credential,
                                      std::vector<TimedAttribute> attributes)
{
  naming::checkPrefix(credential.prefix, "decryptor");
  for (const auto& a : attributes)
    if (!crypto::isValidAttributeName(a.rendered()))
      throw std::invalid_argument("invalid attribute '" + a.rendered() + "'");
  m_registry[credential.prefix] = {credential, std::move(attributes)};
}

DataPacket
AttributeAuthority::issue(const Name& decryptorPrefix, std::string_view requestedAttribute)
{
  return makeKeyData(decryptorPrefix, requestedAttribute, false);
}

DataPacket
AttributeAuthority::makeKeyData(const Name& decryptorPrefix, std::string_view requested, bool reply)
{
  auto it = m_registry.find(decryptorPrefix);
  if (it == m_registry.end())
    throw AttributeNotGranted(decryptorPrefix.toUri() + " holds no attributes");
  const Registration& reg = it->second;

  Millis t = m_net.now();
  std::set<std::string> current;
  bool everHeld = requested.empty();
  for (const auto& a : reg.attributes) {
    if (a.validAt(t))
      current.insert(a.rendered());
    if (a.rendered() == requested)
      everHeld = true;
  }
  if (!requested.empty() && !current.count(std::string(requested))) {
    if (everHeld)
      throw WindowExpired("attribute " + std::string(requested) + " is outside its window");
    throw AttributeNotGranted("attribute " + std::string(requested) + " not granted to " +
                              decryptorPrefix.toUri());
  }
  if (current.empty())
    throw WindowExpired("no attribute of " + decryptorPrefix.toUri() + " is currently valid");

  std::string label = requested.empty() ? *current.begin() : std::string(requested);
  auto name = naming::makeAttributeInterestName(prefix(), label, decryptorPrefix,
                                                reg.credential.keyId).toName();

  auto key = std::make_pair(decryptorPrefix, current);
  auto bundle = m_bundles.find(key);
  if (bundle == m_bundles.end()) {
    auto userKey = m_crypto.abeKeygen(m_master, current);
    HybridPayload payload{m_crypto.hybridEncrypt(reg.credential.publicKey, userKey.encode())};
    bundle = m_bundles.emplace(key, payload.encode()).first;
    ++m_issued;
  }
  ++m_keyPackets;
  if (reply)
    return signAndReply(name, bundle->second, KEY_FRESHNESS);
  DataPacket data = m_crypto.sign(name, bundle->second, KEY_FRESHNESS, m_identity);
  m_published.push_back(data);
  return data;
}

void
AttributeAuthority::onInterest(const InterestPacket& interest)
{
  naming::AttributeInterestName req;
  try {
    req = naming::parseAttributeInterestName(interest.name);
  }
  catch (const naming::NotAConventionName&) {
    return;
  }
  auto it = m_registry.find(req.decryptor);
  if (it != m_registry.end() && it->second.credential.keyId == req.decryptorKeyId) {
    try {
      makeKeyData(req.decryptor, req.attribute.toString(), true);
      return;
    }
    catch (const AttributeNotGranted&) {
    }
    catch (const WindowExpired&) {
    }
  }
  ++m_declined;
  signAndReply(interest.name, {}, DECLINE_FRESHNESS);
}

} // namespace nac
