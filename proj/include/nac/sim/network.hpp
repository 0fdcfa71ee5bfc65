#ifndef NAC_SIM_NETWORK_HPP
#define NAC_SIM_NETWORK_HPP

#include "nac/crypto/rng.hpp"
#include "nac/sim/event_queue.hpp"
#include "nac/sim/topology.hpp"

#include <functional>
#include <list>
#include <map>
#include <memory>
#include <set>

namespace nac::sim {

using AppId = size_t;
using PendingId = uint64_t;

enum class LinkState { Up, Down };

enum class PacketKind { Interest, Data };

enum class FetchStatus { Satisfied, Timeout, NoRoute };

std::string_view
toString(FetchStatus s);

struct FetchResult
{
  FetchStatus status = FetchStatus::Timeout;
  DataPacket data; // valid when status == Satisfied
};

using DataCallback = std::function<void(const FetchResult&)>;
using InterestHandler = std::function<void(const InterestPacket&)>;

enum class TraceKind { Send, Receive, DropLinkDown, DropMalformed };

std::string_view
toString(TraceKind k);

/// One link-level event. Send is logged when a packet enters a link; the
/// matching Receive / Drop when the delivery event fires.
struct TraceEvent
{
  Millis time{0};
  TraceKind kind = TraceKind::Send;
  LinkId link;
  NodeId from;
  NodeId to;
  PacketKind packet = PacketKind::Interest;
  Name name;
  size_t size = 0;
  std::string digest; // SHA-256 of the wire bytes, hex
};

struct NodeStats
{
  uint64_t interestsReceived = 0;
  uint64_t dataReceived = 0;
  uint64_t csHits = 0;
  uint64_t repoHits = 0;
  uint64_t aggregated = 0;
  uint64_t forwarded = 0;
  uint64_t noRoute = 0;
  uint64_t loopsDropped = 0;
  uint64_t unsolicitedData = 0;
  uint64_t malformed = 0;
};

struct LinkStats
{
  uint64_t interests = 0;
  uint64_t data = 0;
  uint64_t bytes = 0;
  uint64_t dropped = 0;
};

/// Called on every link delivery before decoding; may rewrite the bytes.
using TamperHook = std::function<void(const TraceEvent& send, Bytes& wire)>;

/**
 * Simulated NDN network: one forwarder per node (FIB longest-prefix match,
 * PIT aggregation, LRU content store, repo for published Data), links with
 * fixed one-way delay and Up/Down state, and application faces.
 *
 * Single-threaded; all activity happens inside advance() / runUntilIdle().
 */
class Network
{
public:
  explicit
  Network(const TopologySpec& spec, uint64_t seed = 0);

  ~Network();

  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  // topology

  std::vector<NodeId>
  nodes() const;

  std::vector<LinkId>
  links() const;

  bool
  hasNode(const NodeId& id) const;

  /// Link between two neighbours; throws InvalidTopology if none.
  LinkId
  findLink(const NodeId& a, const NodeId& b) const;

  const LinkSpec&
  linkSpec(const LinkId& id) const;

  LinkState
  linkState(const LinkId& id) const;

  /// Packets in flight on the link are lost when it goes Down.
  void
  setLinkState(const LinkId& id, LinkState state);

  // applications

  AppId
  attachApp(const NodeId& node, std::string label = {});

  const NodeId&
  nodeOf(AppId app) const;

  /// Adds a FIB entry at the app's node pointing to the app.
  void
  registerPrefix(AppId app, const Name& prefix, InterestHandler handler);

  /// The nonce is replaced by a fresh one. The callback fires exactly once.
  PendingId
  expressInterest(AppId app, InterestPacket interest, DataCallback cb);

  /// Uses a default application at `node`.
  PendingId
  expressInterest(const NodeId& node, InterestPacket interest, DataCallback cb);

  /// Data from a producer app into its node's forwarder.
  void
  putData(AppId app, const DataPacket& data);

  /// Store in the node's repo; replaces an existing packet of the same name.
  void
  publish(const NodeId& node, const DataPacket& data);

  std::vector<DataPacket>
  repoContents(const NodeId& node) const;

  // caches

  size_t
  csSize(const NodeId& node) const;

  bool
  csContains(const NodeId& node, const Name& name) const;

  void
  clearContentStores();

  // time

  Millis
  now() const noexcept
  {
    return m_events.now();
  }

  void
  schedule(Millis delay, EventQueue::Callback cb)
  {
    m_events.schedule(delay, std::move(cb));
  }

  void
  advance(Millis until)
  {
    m_events.advance(until);
  }

  void
  advanceBy(Millis delta)
  {
    m_events.advance(now() + delta);
  }

  bool
  step()
  {
    return m_events.step();
  }

  size_t
  runUntilIdle()
  {
    return m_events.runUntilIdle();
  }

  // instrumentation

  void
  setTamperHook(TamperHook hook)
  {
    m_tamper = std::move(hook);
  }

  const std::vector<TraceEvent>&
  trace() const noexcept
  {
    return m_trace;
  }

  /// SHA-256 over a canonical text rendering of the trace.
  std::string
  traceDigest() const;

  const NodeStats&
  nodeStats(const NodeId& node) const;

  const LinkStats&
  linkStats(const LinkId& link) const;

  /// Application-originated Interests (one per expressInterest).
  uint64_t
  interestsExpressed() const noexcept
  {
    return m_expressed;
  }

private:
  struct Node;
  struct Face;
  struct Link;
  struct App;

  Node&
  node(const NodeId& id);

  const Node&
  node(const NodeId& id) const;

  void
  receiveInterest(Node& n, int face, const InterestPacket& interest, const Bytes& wire);

  void
  receiveData(Node& n, int face, const DataPacket& data, const Bytes& wire);

  void
  sendOnFace(Node& n, int face, PacketKind kind, const Name& name, const Bytes& wire);

  void
  deliverToApp(AppId app, PacketKind kind, const Bytes& wire);

  void
  resolve(AppId app, PendingId id, FetchResult result);

private:
  EventQueue m_events;
  crypto::Rng m_nonceRng;
  std::map<NodeId, std::unique_ptr<Node>> m_nodes;
  std::map<LinkId, std::unique_ptr<Link>> m_links;
  std::vector<std::unique_ptr<App>> m_apps;
  std::map<NodeId, AppId> m_defaultApps;
  std::vector<TraceEvent> m_trace;
  TamperHook m_tamper;
  PendingId m_nextPending = 1;
  uint64_t m_insertSeq = 0;
  uint64_t m_expressed = 0;
};

} // namespace nac::sim

#endif // NAC_SIM_NETWORK_HPP
