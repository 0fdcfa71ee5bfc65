#ifndef NAC_SIM_EVENT_QUEUE_HPP
#define NAC_SIM_EVENT_QUEUE_HPP

#include "nac/wire/packet.hpp"

#include <functional>
#include <optional>
#include <queue>
#include <vector>

namespace nac::sim {

/**
 * Discrete-event clock. Events fire in nondecreasing time order; events
 * scheduled for the same instant fire in scheduling order.
 */
class EventQueue
{
public:
  using Callback = std::function<void()>;

  Millis
  now() const noexcept
  {
    return m_now;
  }

  /// Schedule at absolute time `at` (clamped to now).
  void
  scheduleAt(Millis at, Callback cb);

  void
  schedule(Millis delay, Callback cb)
  {
    scheduleAt(m_now + delay, std::move(cb));
  }

  bool
  empty() const noexcept
  {
    return m_events.empty();
  }

  std::optional<Millis>
  nextTime() const;

  /// Run the earliest event; false if none.
  bool
  step();

  /// Run every event with time <= until, then set now = until.
  void
  advance(Millis until);

  /// Run until no events remain or `limit` events have fired.
  size_t
  runUntilIdle(size_t limit = 10'000'000);

private:
  struct Event
  {
    Millis time;
    uint64_t seq;
    Callback cb;
  };

  struct Later
  {
    bool
    operator()(const Event& a, const Event& b) const
    {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  void
  fire(Event ev);

private:
  std::priority_queue<Event, std::vector<Event>, Later> m_events;
  Millis m_now{0};
  uint64_t m_seq = 0;
  bool m_running = false;
};

} // namespace nac::sim

#endif // NAC_SIM_EVENT_QUEUE_HPP
