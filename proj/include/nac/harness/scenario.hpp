#ifndef NAC_HARNESS_SCENARIO_HPP
#define NAC_HARNESS_SCENARIO_HPP

#include "nac/sim/topology.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>

namespace nac::harness {

/// Invalid scenario; what() starts with the offending field path.
class ConfigError : public std::runtime_error
{
public:
  ConfigError(const std::string& path, const std::string& msg)
    : std::runtime_error(path + ": " + msg)
    , m_path(path)
  {
  }

  const std::string&
  path() const noexcept
  {
    return m_path;
  }

private:
  std::string m_path;
};

enum class Scheme { Nac, NacAbe };

std::string_view
toString(Scheme s);

/// "nac" or "nac-abe". Throws std::invalid_argument.
Scheme
parseScheme(std::string_view s);

enum class Role { Manager, Authority, Encryptor, Decryptor };

std::string_view
toString(Role r);

struct AttributeConfig
{
  std::string base;
  std::string window;
  std::optional<int64_t> fromMs;
  std::optional<int64_t> toMs;
};

struct EntityConfig
{
  std::string id;
  Role role = Role::Decryptor;
  Name prefix;
  sim::NodeId node;

  // encryptor
  std::string manager;
  Name granularity;
  std::optional<Name> producerPrefix;
  bool embedCk = false;

  // NAC-ABE manager and decryptor
  std::string authority;

  // decryptor
  std::vector<AttributeConfig> attributes;
  bool provision = false;

  // authority; defaults to the scenario's abe_provider
  std::string provider;
};

struct PolicyConfig
{
  std::string manager;
  Name granularity;
  std::vector<std::string> authorized; // NAC: decryptor entity ids
  std::string policy;                  // NAC-ABE
  std::string window;                  // NAC-ABE leaf window label
};

enum class ActionKind {
  Produce,
  Consume,
  Rotate,
  TriggerReencrypt,
  PollNotify,
  Link,
  Issue,
  PublishPolicy,
  ClearCaches,
};

std::string_view
toString(ActionKind k);

struct ScriptAction
{
  Millis at{0};
  ActionKind kind = ActionKind::Produce;
  std::string entity; // acting entity id
  std::string target; // issue: decryptor id
  Name name;          // produce: suffix; consume: content name
  std::optional<std::string> text;
  bool mustBeFresh = false;
  std::string label;
  Name granularity;
  std::vector<std::string> compromised;
  sim::LinkId link;
  bool up = true;
  std::string policy;
  std::string window;
};

struct ScenarioConfig
{
  uint64_t seed = 0;
  Scheme scheme = Scheme::Nac;
  std::string abeProvider = "simulated";
  /// "battlefield", a file path, or "inline".
  std::string topologyRef;
  nlohmann::json topologyJson; // only for inline topologies
  sim::TopologySpec topology;
  size_t contentSize = 128;
  std::vector<EntityConfig> entities;
  std::vector<PolicyConfig> policies;
  std::vector<ScriptAction> script;

  const EntityConfig*
  find(std::string_view id) const;
};

/// Relative topology paths resolve against `baseDir`. Throws ConfigError.
ScenarioConfig
parseScenario(const nlohmann::json& j, const std::filesystem::path& baseDir = {});

/// Throws ConfigError (also for unreadable files).
ScenarioConfig
loadScenario(const std::filesystem::path& path);

/// Inverse of parseScenario for generated configs.
nlohmann::json
toJson(const ScenarioConfig& cfg);

/// Checks cross references, roles and ordering. Throws ConfigError.
void
validateScenario(const ScenarioConfig& cfg);

} // namespace nac::harness

#endif // NAC_HARNESS_SCENARIO_HPP
