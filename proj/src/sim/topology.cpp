#include "nac/sim/topology.hpp"

#include <deque>
#include <fstream>
#include <map>
#include <set>

namespace nac::sim {

namespace {

using nlohmann::json;

template<typename T>
T
field(const json& obj, const char* key, const std::string& where)
{
  if (!obj.is_object() || !obj.contains(key))
    throw InvalidTopology(where + ": missing '" + key + "'");
  try {
    return obj.at(key).get<T>();
  }
  catch (const json::exception&) {
    throw InvalidTopology(where + "." + key + ": wrong type");
  }
}

} // namespace

void
TopologySpec::addRoutesToward(const Name& prefix, const NodeId& origin)
{
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const auto& l : links) {
    adj[l.a].push_back(l.b);
    adj[l.b].push_back(l.a);
  }
  std::map<NodeId, NodeId> parent;
  std::deque<NodeId> queue{origin};
  std::set<NodeId> seen{origin};
  while (!queue.empty()) {
    NodeId cur = queue.front();
    queue.pop_front();
    for (const auto& nb : adj[cur]) {
      if (seen.insert(nb).second) {
        parent[nb] = cur;
        queue.push_back(nb);
      }
    }
  }
  for (const auto& n : nodes) {
    auto it = parent.find(n.id);
    if (it != parent.end())
      routes.push_back({n.id, prefix, it->second});
  }
}

void
TopologySpec::validate() const
{
  if (nodes.empty())
    throw InvalidTopology("topology has no nodes");
  std::set<NodeId> ids;
  for (const auto& n : nodes) {
    if (n.id.empty())
      throw InvalidTopology("node with empty id");
    if (!ids.insert(n.id).second)
      throw InvalidTopology("duplicate node '" + n.id + "'");
  }
  std::set<LinkId> linkIds;
  std::set<std::pair<NodeId, NodeId>> adjacent;
  for (const auto& l : links) {
    if (!ids.count(l.a) || !ids.count(l.b))
      throw InvalidTopology("link '" + l.id + "' references an undeclared node");
    if (l.a == l.b)
      throw InvalidTopology("link '" + l.id + "' is a self-loop");
    if (l.delay <= Millis(0))
      throw InvalidTopology("link '" + l.id + "' must have a positive delay");
    if (!linkIds.insert(l.id).second)
      throw InvalidTopology("duplicate link '" + l.id + "'");
    adjacent.insert({l.a, l.b});
    adjacent.insert({l.b, l.a});
  }
  for (const auto& r : routes) {
    if (!ids.count(r.node) || !ids.count(r.nextHop))
      throw InvalidTopology("route for " + r.prefix.toUri() + " references an undeclared node");
    if (!adjacent.count({r.node, r.nextHop}))
      throw InvalidTopology("route at '" + r.node + "' names non-neighbour '" + r.nextHop + "'");
  }
}

TopologySpec
TopologySpec::fromJson(const json& j)
{
  if (!j.is_object())
    throw InvalidTopology("topology must be an object");
  TopologySpec spec;
  const json nodes = j.value("nodes", json::array());
  if (!nodes.is_array())
    throw InvalidTopology("nodes must be an array");
  for (size_t i = 0; i < nodes.size(); ++i) {
    std::string where = "nodes[" + std::to_string(i) + "]";
    NodeSpec n;
    if (nodes[i].is_string()) {
      n.id = nodes[i].get<std::string>();
    }
    else {
      n.id = field<std::string>(nodes[i], "id", where);
      if (nodes[i].contains("cs_capacity"))
        n.csCapacity = field<size_t>(nodes[i], "cs_capacity", where);
    }
    spec.nodes.push_back(n);
  }

  const json links = j.value("links", json::array());
  for (size_t i = 0; i < links.size(); ++i) {
    std::string where = "links[" + std::to_string(i) + "]";
    LinkSpec l;
    l.a = field<std::string>(links[i], "a", where);
    l.b = field<std::string>(links[i], "b", where);
    l.id = links[i].contains("id") ? field<std::string>(links[i], "id", where) : l.a + "--" + l.b;
    if (links[i].contains("delay_ms"))
      l.delay = Millis(field<int64_t>(links[i], "delay_ms", where));
    spec.links.push_back(l);
  }

  std::vector<std::pair<Name, NodeId>> toward;
  const json routes = j.value("routes", json::array());
  for (size_t i = 0; i < routes.size(); ++i) {
    std::string where = "routes[" + std::to_string(i) + "]";
    Name prefix;
    try {
      prefix = Name(field<std::string>(routes[i], "prefix", where));
    }
    catch (const Name::Error& e) {
      throw InvalidTopology(where + ".prefix: " + e.what());
    }
    if (routes[i].contains("origin")) {
      toward.emplace_back(prefix, field<std::string>(routes[i], "origin", where));
    }
    else {
      spec.routes.push_back({field<std::string>(routes[i], "node", where), prefix,
                             field<std::string>(routes[i], "next_hop", where)});
    }
  }

  spec.validate();
  for (const auto& [prefix, origin] : toward) {
    bool known = false;
    for (const auto& n : spec.nodes)
      known = known || n.id == origin;
    if (!known)
      throw InvalidTopology("route origin '" + origin + "' is not a node");
    spec.addRoutesToward(prefix, origin);
  }
  return spec;
}

TopologySpec
TopologySpec::load(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw InvalidTopology("cannot open topology file " + path.string());
  json j;
  try {
    in >> j;
  }
  catch (const json::exception& e) {
    throw InvalidTopology(path.string() + ": " + e.what());
  }
  return fromJson(j);
}

TopologySpec
battlefieldTopology()
{
  TopologySpec spec;
  for (const char* id : {"commandCenter", "satellite", "aircraftGw", "squadGw", "aircraftA",
                         "aircraftB", "squadA", "squadB", "squadC"})
    spec.nodes.push_back({id, DEFAULT_CS_CAPACITY});
  auto link = [&](const char* a, const char* b, int64_t delay) {
    spec.links.push_back({std::string(a) + "--" + b, a, b, Millis(delay)});
  };
  link("commandCenter", "satellite", 120);
  link("satellite", "aircraftGw", 120);
  link("aircraftGw", "squadGw", 20);
  link("aircraftGw", "aircraftA", 10);
  link("aircraftGw", "aircraftB", 10);
  link("squadGw", "squadA", 5);
  link("squadGw", "squadB", 5);
  link("squadGw", "squadC", 5);
  return spec;
}

} // namespace nac::sim
