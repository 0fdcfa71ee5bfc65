#ifndef NAC_SIM_TOPOLOGY_HPP
#define NAC_SIM_TOPOLOGY_HPP

#include "nac/wire/packet.hpp"

#include "json.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace nac::sim {

using NodeId = std::string;
using LinkId = std::string;

constexpr size_t DEFAULT_CS_CAPACITY = 1024;

class InvalidTopology : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

struct NodeSpec
{
  NodeId id;
  size_t csCapacity = DEFAULT_CS_CAPACITY;
};

struct LinkSpec
{
  LinkId id;
  NodeId a;
  NodeId b;
  Millis delay{10};
};

/// FIB entry at `node`: Interests under `prefix` go to neighbour `nextHop`.
struct RouteSpec
{
  NodeId node;
  Name prefix;
  NodeId nextHop;
};

struct TopologySpec
{
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;
  std::vector<RouteSpec> routes;

  /// Add routes for `prefix` on every node along shortest (hop-count) paths
  /// toward `origin`. Ties break on link declaration order.
  void
  addRoutesToward(const Name& prefix, const NodeId& origin);

  /// Throws InvalidTopology.
  void
  validate() const;

  /// Schema in docs/topology.md. Throws InvalidTopology.
  static TopologySpec
  fromJson(const nlohmann::json& j);

  static TopologySpec
  load(const std::filesystem::path& path);
};

/// The battlefield network: command center, satellite relay, aircraft and
/// squad gateways, two aircraft and three squads. Routes are not included.
TopologySpec
battlefieldTopology();

} // namespace nac::sim

#endif // NAC_SIM_TOPOLOGY_HPP
