#include "nac/sim/event_queue.hpp"

#include <stdexcept>

namespace nac::sim {

void
EventQueue::scheduleAt(Millis at, Callback cb)
{
  m_events.push({std::max(at, m_now), m_seq++, std::move(cb)});
}

std::optional<Millis>
EventQueue::nextTime() const
{
  if (m_events.empty())
    return std::nullopt;
  return m_events.top().time;
}

void
EventQueue::fire(Event ev)
{
  if (m_running)
    throw std::logic_error("event handlers must not re-enter the event loop");
  m_now = ev.time;
  m_running = true;
  try {
    ev.cb();
  }
  catch (...) {
    m_running = false;
    throw;
  }
  m_running = false;
}

bool
EventQueue::step()
{
  if (m_events.empty())
    return false;
  Event ev = m_events.top();
  m_events.pop();
  fire(std::move(ev));
  return true;
}

void
EventQueue::advance(Millis until)
{
  if (m_running)
    throw std::logic_error("event handlers must not re-enter the event loop");
  if (until < m_now)
    throw std::invalid_argument("cannot advance backwards in time");
  while (!m_events.empty() && m_events.top().time <= until)
    step();
  m_now = until;
}

size_t
EventQueue::runUntilIdle(size_t limit)
{
  if (m_running)
    throw std::logic_error("event handlers must not re-enter the event loop");
  size_t n = 0;
  while (n < limit && step())
    ++n;
  return n;
}

} // namespace nac::sim
