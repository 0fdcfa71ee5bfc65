#include "nac/entities/fetcher.hpp"

namespace nac {

void
Fetcher::fetch(InterestPacket interest, sim::DataCallback done)
{
  attempt(std::move(interest), 0, std::move(done));
}

void
Fetcher::attempt(InterestPacket interest, unsigned k, sim::DataCallback done)
{
  Millis lifetime = m_policy.initialLifetime;
  for (unsigned i = 0; i < k; ++i)
    lifetime *= m_policy.backoff;
  interest.lifetime = lifetime;
  m_expressed.push_back(interest.name);

  m_net.expressInterest(m_app, interest, [this, interest, k, lifetime, done](const sim::FetchResult& r) {
    if (r.status == sim::FetchStatus::Satisfied || k >= m_policy.retries) {
      done(r);
      return;
    }
    if (r.status == sim::FetchStatus::NoRoute) {
      m_net.schedule(lifetime, [this, interest, k, done] { attempt(interest, k + 1, done); });
      return;
    }
    attempt(interest, k + 1, done);
  });
}

} // namespace nac
