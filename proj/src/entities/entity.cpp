#include "nac/entities/entity.hpp"

namespace nac {

Entity::Entity(sim::Network& net, sim::NodeId node, IdentityKeyPair identity, crypto::Rng rng,
               const TrustStore& trust, RetryPolicy retry)
  : m_net(net)
  , m_node(std::move(node))
  , m_app(net.attachApp(m_node, identity.identityName.toUri()))
  , m_identity(std::move(identity))
  , m_crypto(std::move(rng))
  , m_trust(trust)
  , m_fetcher(net, m_app, retry)
{
}

DataPacket
Entity::signAndPublish(Name name, Bytes content, Millis freshness)
{
  DataPacket data = m_crypto.sign(std::move(name), std::move(content), freshness, m_identity);
  m_net.publish(m_node, data);
  m_published.push_back(data);
  return data;
}

DataPacket
Entity::signAndReply(Name name, Bytes content, Millis freshness)
{
  DataPacket data = m_crypto.sign(std::move(name), std::move(content), freshness, m_identity);
  m_net.putData(m_app, data);
  m_published.push_back(data);
  return data;
}

} // namespace nac
