#ifndef NAC_ENTITIES_FETCHER_HPP
#define NAC_ENTITIES_FETCHER_HPP

#include "nac/sim/network.hpp"

namespace nac {

/// Consumer-side retransmission: attempt k uses lifetime initial * backoff^k.
struct RetryPolicy
{
  unsigned retries = 3;
  Millis initialLifetime = DEFAULT_INTEREST_LIFETIME;
  unsigned backoff = 2;
};

/**
 * Expresses an Interest and re-expresses it on timeout per RetryPolicy.
 * A NoRoute answer is retried after the attempt's lifetime elapses.
 */
class Fetcher
{
public:
  Fetcher(sim::Network& net, sim::AppId app, RetryPolicy policy)
    : m_net(net)
    , m_app(app)
    , m_policy(policy)
  {
  }

  void
  fetch(InterestPacket interest, sim::DataCallback done);

  const RetryPolicy&
  policy() const noexcept
  {
    return m_policy;
  }

  /// Every Interest name this fetcher has expressed, in order.
  const std::vector<Name>&
  expressedNames() const noexcept
  {
    return m_expressed;
  }

private:
  void
  attempt(InterestPacket interest, unsigned k, sim::DataCallback done);

private:
  sim::Network& m_net;
  sim::AppId m_app;
  RetryPolicy m_policy;
  std::vector<Name> m_expressed;
};

} // namespace nac

#endif // NAC_ENTITIES_FETCHER_HPP
