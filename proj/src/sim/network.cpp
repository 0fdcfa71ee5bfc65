#include "nac/sim/network.hpp"
#include "nac/crypto/hash.hpp"

#include <sstream>
#include <tuple>

namespace nac::sim {

std::string_view
toString(FetchStatus s)
{
  switch (s) {
    case FetchStatus::Satisfied:
      return "Satisfied";
    case FetchStatus::Timeout:
      return "Timeout";
    case FetchStatus::NoRoute:
      return "NoRoute";
  }
  return "?";
}

std::string_view
toString(TraceKind k)
{
  switch (k) {
    case TraceKind::Send:
      return "send";
    case TraceKind::Receive:
      return "recv";
    case TraceKind::DropLinkDown:
      return "drop-down";
    case TraceKind::DropMalformed:
      return "drop-malformed";
  }
  return "?";
}

struct Network::Face
{
  bool isApp = false;
  LinkId link;
  NodeId peer;
  AppId app = 0;
};

namespace {

struct StoredData
{
  DataPacket data;
  Bytes wire;
  Millis arrival{0};
  uint64_t seq = 0;

  bool
  isFresh(Millis now) const
  {
    return now < arrival + data.freshnessPeriod;
  }
};

using PitKey = std::tuple<Name, bool, bool>;

struct PitEntry
{
  InterestPacket interest;
  std::map<int, Millis> inRecords; // face -> expiry
  std::set<uint32_t> nonces;
  Millis expiry{0};
};

} // namespace

struct Network::Node
{
  NodeSpec spec;
  std::vector<Face> faces;
  std::map<LinkId, int> linkFaces;
  std::vector<std::pair<Name, int>> fib;

  std::list<Name> lru; // front = most recent
  std::map<Name, std::pair<StoredData, std::list<Name>::iterator>> cs;
  std::map<Name, StoredData> repo;
  std::map<PitKey, PitEntry> pit;
  NodeStats stats;

  void
  csInsert(StoredData sd)
  {
    if (spec.csCapacity == 0)
      return;
    auto it = cs.find(sd.data.name);
    if (it != cs.end()) {
      lru.erase(it->second.second);
      cs.erase(it);
    }
    lru.push_front(sd.data.name);
    Name key = sd.data.name;
    cs.emplace(std::move(key), std::make_pair(std::move(sd), lru.begin()));
    while (cs.size() > spec.csCapacity) {
      cs.erase(lru.back());
      lru.pop_back();
    }
  }

  const StoredData*
  csLookup(const InterestPacket& interest, Millis now)
  {
    const StoredData* best = nullptr;
    Name bestName;
    for (auto it = cs.lower_bound(interest.name);
         it != cs.end() && interest.name.isPrefixOf(it->first); ++it) {
      const StoredData& sd = it->second.first;
      if (!interest.matches(sd.data.name) || (interest.mustBeFresh && !sd.isFresh(now)))
        continue;
      if (best == nullptr || sd.seq > best->seq) {
        best = &sd;
        bestName = it->first;
      }
    }
    if (best != nullptr) {
      auto& slot = cs.at(bestName);
      lru.erase(slot.second);
      lru.push_front(bestName);
      slot.second = lru.begin();
    }
    return best;
  }

  // Repo content is authoritative and served regardless of freshness.
  const StoredData*
  repoLookup(const InterestPacket& interest) const
  {
    const StoredData* best = nullptr;
    for (auto it = repo.lower_bound(interest.name);
         it != repo.end() && interest.name.isPrefixOf(it->first); ++it) {
      if (interest.matches(it->first) && (best == nullptr || it->second.seq > best->seq))
        best = &it->second;
    }
    return best;
  }

  int
  fibLookup(const Name& name, int exclude) const
  {
    int face = -1;
    size_t bestLen = 0;
    for (const auto& [prefix, f] : fib) {
      if (f == exclude || !prefix.isPrefixOf(name))
        continue;
      if (face < 0 || prefix.size() > bestLen) {
        face = f;
        bestLen = prefix.size();
      }
    }
    return face;
  }
};

struct Network::Link
{
  LinkSpec spec;
  LinkState state = LinkState::Up;
  uint64_t generation = 0;
  LinkStats stats;
};

struct Network::App
{
  struct Pending
  {
    InterestPacket interest;
    DataCallback cb;
  };

  NodeId node;
  std::string label;
  int face = -1;
  std::vector<std::pair<Name, InterestHandler>> handlers;
  std::map<PendingId, Pending> pending;
};

Network::Network(const TopologySpec& spec, uint64_t seed)
  : m_nonceRng(crypto::Rng(seed).derive("interest-nonces"))
{
  spec.validate();
  for (const auto& n : spec.nodes) {
    auto node = std::make_unique<Node>();
    node->spec = n;
    m_nodes.emplace(n.id, std::move(node));
  }
  for (const auto& l : spec.links) {
    auto link = std::make_unique<Link>();
    link->spec = l;
    m_links.emplace(l.id, std::move(link));
    Node& a = *m_nodes.at(l.a);
    Node& b = *m_nodes.at(l.b);
    a.linkFaces[l.id] = static_cast<int>(a.faces.size());
    a.faces.push_back({false, l.id, l.b, 0});
    b.linkFaces[l.id] = static_cast<int>(b.faces.size());
    b.faces.push_back({false, l.id, l.a, 0});
  }
  for (const auto& r : spec.routes) {
    Node& n = *m_nodes.at(r.node);
    n.fib.emplace_back(r.prefix, n.linkFaces.at(findLink(r.node, r.nextHop)));
  }
}

Network::~Network() = default;

Network::Node&
Network::node(const NodeId& id)
{
  auto it = m_nodes.find(id);
  if (it == m_nodes.end())
    throw InvalidTopology("unknown node '" + id + "'");
  return *it->second;
}

const Network::Node&
Network::node(const NodeId& id) const
{
  auto it = m_nodes.find(id);
  if (it == m_nodes.end())
    throw InvalidTopology("unknown node '" + id + "'");
  return *it->second;
}

std::vector<NodeId>
Network::nodes() const
{
  std::vector<NodeId> out;
  for (const auto& [id, n] : m_nodes)
    out.push_back(id);
  return out;
}

std::vector<LinkId>
Network::links() const
{
  std::vector<LinkId> out;
  for (const auto& [id, l] : m_links)
    out.push_back(id);
  return out;
}

bool
Network::hasNode(const NodeId& id) const
{
  return m_nodes.count(id) > 0;
}

LinkId
Network::findLink(const NodeId& a, const NodeId& b) const
{
  for (const auto& [id, l] : m_links) {
    if ((l->spec.a == a && l->spec.b == b) || (l->spec.a == b && l->spec.b == a))
      return id;
  }
  throw InvalidTopology("no link between '" + a + "' and '" + b + "'");
}

const LinkSpec&
Network::linkSpec(const LinkId& id) const
{
  auto it = m_links.find(id);
  if (it == m_links.end())
    throw InvalidTopology("unknown link '" + id + "'");
  return it->second->spec;
}

LinkState
Network::linkState(const LinkId& id) const
{
  linkSpec(id);
  return m_links.at(id)->state;
}

void
Network::setLinkState(const LinkId& id, LinkState state)
{
  linkSpec(id);
  Link& l = *m_links.at(id);
  if (l.state != state && state == LinkState::Down)
    ++l.generation;
  l.state = state;
}

AppId
Network::attachApp(const NodeId& nodeId, std::string label)
{
  Node& n = node(nodeId);
  auto app = std::make_unique<App>();
  app->node = nodeId;
  app->label = std::move(label);
  app->face = static_cast<int>(n.faces.size());
  AppId id = m_apps.size();
  n.faces.push_back({true, {}, {}, id});
  m_apps.push_back(std::move(app));
  return id;
}

const NodeId&
Network::nodeOf(AppId app) const
{
  return m_apps.at(app)->node;
}

void
Network::registerPrefix(AppId appId, const Name& prefix, InterestHandler handler)
{
  App& app = *m_apps.at(appId);
  app.handlers.emplace_back(prefix, std::move(handler));
  node(app.node).fib.emplace_back(prefix, app.face);
}

PendingId
Network::expressInterest(AppId appId, InterestPacket interest, DataCallback cb)
{
  App& app = *m_apps.at(appId);
  interest.nonce = m_nonceRng.nextU32();
  PendingId id = m_nextPending++;
  app.pending.emplace(id, App::Pending{interest, std::move(cb)});
  ++m_expressed;

  Bytes wire = encodeInterest(interest);
  NodeId nodeId = app.node;
  int face = app.face;
  m_events.schedule(Millis(0), [this, nodeId, face, interest, wire] {
    receiveInterest(node(nodeId), face, interest, wire);
  });
  m_events.schedule(interest.lifetime, [this, appId, id] {
    resolve(appId, id, {FetchStatus::Timeout, {}});
  });
  return id;
}

PendingId
Network::expressInterest(const NodeId& nodeId, InterestPacket interest, DataCallback cb)
{
  auto it = m_defaultApps.find(nodeId);
  if (it == m_defaultApps.end())
    it = m_defaultApps.emplace(nodeId, attachApp(nodeId, "default")).first;
  return expressInterest(it->second, std::move(interest), std::move(cb));
}

void
Network::putData(AppId appId, const DataPacket& data)
{
  const App& app = *m_apps.at(appId);
  NodeId nodeId = app.node;
  int face = app.face;
  Bytes wire = encodeData(data);
  m_events.schedule(Millis(0), [this, nodeId, face, data, wire] {
    receiveData(node(nodeId), face, data, wire);
  });
}

void
Network::publish(const NodeId& nodeId, const DataPacket& data)
{
  node(nodeId).repo[data.name] = StoredData{data, encodeData(data), now(), m_insertSeq++};
}

std::vector<DataPacket>
Network::repoContents(const NodeId& nodeId) const
{
  std::vector<DataPacket> out;
  for (const auto& [name, sd] : node(nodeId).repo)
    out.push_back(sd.data);
  return out;
}

size_t
Network::csSize(const NodeId& nodeId) const
{
  return node(nodeId).cs.size();
}

bool
Network::csContains(const NodeId& nodeId, const Name& name) const
{
  return node(nodeId).cs.count(name) > 0;
}

void
Network::clearContentStores()
{
  for (auto& [id, n] : m_nodes) {
    n->cs.clear();
    n->lru.clear();
  }
}

const NodeStats&
Network::nodeStats(const NodeId& nodeId) const
{
  return node(nodeId).stats;
}

const LinkStats&
Network::linkStats(const LinkId& link) const
{
  linkSpec(link);
  return m_links.at(link)->stats;
}

std::string
Network::traceDigest() const
{
  std::ostringstream os;
  for (const auto& ev : m_trace) {
    os << ev.time.count() << ' ' << toString(ev.kind) << ' ' << ev.link << ' ' << ev.from << ' '
       << ev.to << ' ' << (ev.packet == PacketKind::Interest ? 'I' : 'D') << ' ' << ev.name << ' '
       << ev.size << ' ' << ev.digest << '\n';
  }
  return crypto::sha256Hex(toBytes(os.str()));
}

void
Network::receiveInterest(Node& n, int face, const InterestPacket& interest, const Bytes& wire)
{
  ++n.stats.interestsReceived;
  Millis t = now();
  PitKey key{interest.name, interest.canBePrefix, interest.mustBeFresh};

  auto pitIt = n.pit.find(key);
  if (pitIt != n.pit.end() && pitIt->second.nonces.count(interest.nonce)) {
    ++n.stats.loopsDropped;
    return;
  }

  if (const StoredData* hit = n.csLookup(interest, t)) {
    ++n.stats.csHits;
    sendOnFace(n, face, PacketKind::Data, hit->data.name, hit->wire);
    return;
  }
  if (const StoredData* hit = n.repoLookup(interest)) {
    ++n.stats.repoHits;
    sendOnFace(n, face, PacketKind::Data, hit->data.name, hit->wire);
    return;
  }

  bool isNew = pitIt == n.pit.end();
  if (isNew)
    pitIt = n.pit.emplace(key, PitEntry{interest, {}, {}, Millis(0)}).first;
  PitEntry& entry = pitIt->second;
  bool retransmission = entry.inRecords.count(face) > 0;
  entry.nonces.insert(interest.nonce);
  entry.inRecords[face] = t + interest.lifetime;
  if (t + interest.lifetime > entry.expiry) {
    entry.expiry = t + interest.lifetime;
    NodeId nodeId = n.spec.id;
    m_events.scheduleAt(entry.expiry, [this, nodeId, key] {
      Node& nn = node(nodeId);
      auto it = nn.pit.find(key);
      if (it != nn.pit.end() && it->second.expiry <= now())
        nn.pit.erase(it);
    });
  }
  if (!isNew && !retransmission) {
    ++n.stats.aggregated;
    return;
  }

  int out = n.fibLookup(interest.name, face);
  if (out < 0) {
    ++n.stats.noRoute;
    if (isNew)
      n.pit.erase(pitIt);
    const Face& in = n.faces[face];
    if (in.isApp) {
      AppId appId = in.app;
      uint32_t nonce = interest.nonce;
      m_events.schedule(Millis(0), [this, appId, nonce] {
        App& app = *m_apps.at(appId);
        for (const auto& [id, p] : app.pending) {
          if (p.interest.nonce == nonce) {
            resolve(appId, id, {FetchStatus::NoRoute, {}});
            return;
          }
        }
      });
    }
    return;
  }
  ++n.stats.forwarded;
  sendOnFace(n, out, PacketKind::Interest, interest.name, wire);
}

void
Network::receiveData(Node& n, int face, const DataPacket& data, const Bytes& wire)
{
  ++n.stats.dataReceived;
  Millis t = now();
  std::set<int> downstream;
  bool matched = false;
  for (auto it = n.pit.begin(); it != n.pit.end();) {
    if (it->second.interest.matches(data.name)) {
      matched = true;
      for (const auto& [f, expiry] : it->second.inRecords)
        if (f != face && expiry >= t)
          downstream.insert(f);
      it = n.pit.erase(it);
    }
    else {
      ++it;
    }
  }
  if (!matched) {
    ++n.stats.unsolicitedData;
    return;
  }
  n.csInsert(StoredData{data, wire, t, m_insertSeq++});
  for (int f : downstream)
    sendOnFace(n, f, PacketKind::Data, data.name, wire);
}

void
Network::sendOnFace(Node& n, int faceIdx, PacketKind kind, const Name& name, const Bytes& wire)
{
  const Face& face = n.faces.at(faceIdx);
  if (face.isApp) {
    AppId appId = face.app;
    m_events.schedule(Millis(0), [this, appId, kind, wire] { deliverToApp(appId, kind, wire); });
    return;
  }

  Link& link = *m_links.at(face.link);
  TraceEvent ev{now(), TraceKind::Send, face.link, n.spec.id, face.peer, kind, name,
                wire.size(), crypto::sha256Hex(wire)};
  if (link.state == LinkState::Down) {
    ev.kind = TraceKind::DropLinkDown;
    ++link.stats.dropped;
    m_trace.push_back(ev);
    return;
  }
  m_trace.push_back(ev);
  if (kind == PacketKind::Interest)
    ++link.stats.interests;
  else
    ++link.stats.data;
  link.stats.bytes += wire.size();

  uint64_t generation = link.generation;
  m_events.schedule(link.spec.delay, [this, ev, wire, generation] {
    Link& l = *m_links.at(ev.link);
    TraceEvent rx = ev;
    rx.time = now();
    if (l.state == LinkState::Down || l.generation != generation) {
      rx.kind = TraceKind::DropLinkDown;
      ++l.stats.dropped;
      m_trace.push_back(rx);
      return;
    }
    Bytes bytes = wire;
    if (m_tamper)
      m_tamper(ev, bytes);
    rx.digest = crypto::sha256Hex(bytes);
    rx.size = bytes.size();
    Node& peer = node(ev.to);
    int inFace = peer.linkFaces.at(ev.link);
    Packet pkt;
    try {
      pkt = decodePacket(bytes);
    }
    catch (const MalformedPacket&) {
      rx.kind = TraceKind::DropMalformed;
      ++peer.stats.malformed;
      m_trace.push_back(rx);
      return;
    }
    rx.kind = TraceKind::Receive;
    m_trace.push_back(rx);
    if (auto* interest = std::get_if<InterestPacket>(&pkt))
      receiveInterest(peer, inFace, *interest, bytes);
    else
      receiveData(peer, inFace, std::get<DataPacket>(pkt), bytes);
  });
}

void
Network::deliverToApp(AppId appId, PacketKind kind, const Bytes& wire)
{
  App& app = *m_apps.at(appId);
  Packet pkt = decodePacket(wire);
  if (kind == PacketKind::Interest) {
    const auto& interest = std::get<InterestPacket>(pkt);
    const InterestHandler* best = nullptr;
    size_t bestLen = 0;
    for (const auto& [prefix, handler] : app.handlers) {
      if (prefix.isPrefixOf(interest.name) && (best == nullptr || prefix.size() > bestLen)) {
        best = &handler;
        bestLen = prefix.size();
      }
    }
    if (best != nullptr)
      (*best)(interest);
    return;
  }

  const auto& data = std::get<DataPacket>(pkt);
  std::vector<PendingId> satisfied;
  for (const auto& [id, p] : app.pending)
    if (p.interest.matches(data.name))
      satisfied.push_back(id);
  for (PendingId id : satisfied)
    resolve(appId, id, {FetchStatus::Satisfied, data});
}

void
Network::resolve(AppId appId, PendingId id, FetchResult result)
{
  App& app = *m_apps.at(appId);
  auto it = app.pending.find(id);
  if (it == app.pending.end())
    return;
  DataCallback cb = std::move(it->second.cb);
  app.pending.erase(it);
  if (cb)
    cb(result);
}

} // namespace nac::sim
