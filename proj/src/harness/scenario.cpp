#include "nac/harness/scenario.hpp"
#include "nac/crypto/abe.hpp"
#include "nac/crypto/policy.hpp"
#include "nac/naming/conventions.hpp"

#include <fstream>
#include <set>

namespace nac::harness {

using nlohmann::json;

std::string_view
toString(Scheme s)
{
  return s == Scheme::Nac ? "nac" : "nac-abe";
}

Scheme
parseScheme(std::string_view s)
{
  if (s == "nac")
    return Scheme::Nac;
  if (s == "nac-abe")
    return Scheme::NacAbe;
  throw std::invalid_argument("unknown scheme '" + std::string(s) + "'");
}

std::string_view
toString(Role r)
{
  switch (r) {
  case Role::Manager:
    return "manager";
  case Role::Authority:
    return "authority";
  case Role::Encryptor:
    return "encryptor";
  case Role::Decryptor:
    return "decryptor";
  }
  return "?";
}

static const std::map<std::string, ActionKind, std::less<>> ACTIONS = {
  {"produce", ActionKind::Produce},
  {"consume", ActionKind::Consume},
  {"rotate", ActionKind::Rotate},
  {"trigger_reencrypt", ActionKind::TriggerReencrypt},
  {"poll_notify", ActionKind::PollNotify},
  {"link", ActionKind::Link},
  {"issue", ActionKind::Issue},
  {"publish_policy", ActionKind::PublishPolicy},
  {"clear_caches", ActionKind::ClearCaches},
};

std::string_view
toString(ActionKind k)
{
  for (const auto& [name, kind] : ACTIONS)
    if (kind == k)
      return name;
  return "?";
}

const EntityConfig*
ScenarioConfig::find(std::string_view id) const
{
  for (const auto& e : entities)
    if (e.id == id)
      return &e;
  return nullptr;
}

namespace {

class Reader
{
public:
  Reader(const json& obj, std::string path)
    : m_obj(obj)
    , m_path(std::move(path))
  {
    if (!obj.is_object())
      throw ConfigError(m_path, "expected an object");
  }

  bool
  has(const char* key) const
  {
    return m_obj.contains(key);
  }

  std::string
  at(const char* key) const
  {
    return m_path + "." + key;
  }

  template<typename T>
  T
  get(const char* key) const
  {
    if (!has(key))
      throw ConfigError(at(key), "missing");
    try {
      return m_obj.at(key).get<T>();
    }
    catch (const json::exception&) {
      throw ConfigError(at(key), "wrong type");
    }
  }

  template<typename T>
  T
  get(const char* key, T fallback) const
  {
    return has(key) ? get<T>(key) : fallback;
  }

  Name
  name(const char* key) const
  {
    auto uri = get<std::string>(key);
    if (uri.empty() || uri[0] != '/')
      throw ConfigError(at(key), "not a name: '" + uri + "'");
    try {
      return Name(uri);
    }
    catch (const std::exception& e) {
      throw ConfigError(at(key), e.what());
    }
  }

  const json&
  raw(const char* key) const
  {
    return m_obj.at(key);
  }

private:
  const json& m_obj;
  std::string m_path;
};

AttributeConfig
parseAttribute(const json& j, const std::string& path)
{
  AttributeConfig a;
  if (j.is_string()) {
    a.base = j.get<std::string>();
  }
  else {
    Reader r(j, path);
    a.base = r.get<std::string>("base");
    a.window = r.get<std::string>("window", "");
    if (r.has("from_ms"))
      a.fromMs = r.get<int64_t>("from_ms");
    if (r.has("to_ms"))
      a.toMs = r.get<int64_t>("to_ms");
  }
  std::string rendered = a.window.empty() ? a.base : a.base + "-" + a.window;
  if (!crypto::isValidAttributeName(rendered))
    throw ConfigError(path, "invalid attribute '" + rendered + "'");
  return a;
}

EntityConfig
parseEntity(const json& j, const std::string& path)
{
  Reader r(j, path);
  EntityConfig e;
  e.id = r.get<std::string>("id");
  auto role = r.get<std::string>("role");
  if (role == "manager")
    e.role = Role::Manager;
  else if (role == "authority")
    e.role = Role::Authority;
  else if (role == "encryptor")
    e.role = Role::Encryptor;
  else if (role == "decryptor")
    e.role = Role::Decryptor;
  else
    throw ConfigError(r.at("role"), "unknown role '" + role + "'");
  e.prefix = r.name("prefix");
  e.node = r.get<std::string>("node");

  switch (e.role) {
  case Role::Encryptor:
    e.manager = r.get<std::string>("manager");
    e.granularity = r.name("granularity");
    if (r.has("producer_prefix"))
      e.producerPrefix = r.name("producer_prefix");
    e.embedCk = r.get<bool>("embed_ck", false);
    break;
  case Role::Manager:
    e.authority = r.get<std::string>("authority", "");
    break;
  case Role::Decryptor:
    e.authority = r.get<std::string>("authority", "");
    if (r.has("attributes")) {
      const auto& attrs = r.raw("attributes");
      if (!attrs.is_array())
        throw ConfigError(r.at("attributes"), "expected an array");
      for (size_t i = 0; i < attrs.size(); ++i)
        e.attributes.push_back(parseAttribute(attrs[i], r.at("attributes") + "[" + std::to_string(i) + "]"));
    }
    e.provision = r.get<bool>("provision", false);
    break;
  case Role::Authority:
    e.provider = r.get<std::string>("provider", "");
    break;
  }
  return e;
}

PolicyConfig
parsePolicyEntry(const json& j, const std::string& path)
{
  Reader r(j, path);
  PolicyConfig p;
  p.manager = r.get<std::string>("manager");
  p.granularity = r.name("granularity");
  p.authorized = r.get<std::vector<std::string>>("authorized", {});
  p.policy = r.get<std::string>("policy", "");
  p.window = r.get<std::string>("window", "");
  return p;
}

ScriptAction
parseAction(const json& j, const std::string& path)
{
  Reader r(j, path);
  ScriptAction a;
  int64_t at = r.get<int64_t>("at_ms");
  if (at < 0)
    throw ConfigError(r.at("at_ms"), "negative time");
  a.at = Millis(at);
  auto kind = r.get<std::string>("action");
  auto it = ACTIONS.find(kind);
  if (it == ACTIONS.end())
    throw ConfigError(r.at("action"), "unknown action '" + kind + "'");
  a.kind = it->second;

  switch (a.kind) {
  case ActionKind::Produce:
    a.entity = r.get<std::string>("encryptor");
    a.name = r.name("name");
    if (r.has("text"))
      a.text = r.get<std::string>("text");
    break;
  case ActionKind::Consume:
    a.entity = r.get<std::string>("decryptor");
    a.name = r.name("name");
    a.mustBeFresh = r.get<bool>("must_be_fresh", false);
    a.label = r.get<std::string>("label", "");
    break;
  case ActionKind::Rotate:
    a.entity = r.get<std::string>("manager");
    a.granularity = r.name("granularity");
    a.compromised = r.get<std::vector<std::string>>("compromised", {});
    break;
  case ActionKind::TriggerReencrypt:
    a.entity = r.get<std::string>("manager");
    a.granularity = r.name("granularity");
    break;
  case ActionKind::PollNotify:
    a.entity = r.get<std::string>("encryptor");
    break;
  case ActionKind::Link: {
    a.link = r.get<std::string>("link");
    auto state = r.get<std::string>("state");
    if (state != "up" && state != "down")
      throw ConfigError(r.at("state"), "expected \"up\" or \"down\"");
    a.up = state == "up";
    break;
  }
  case ActionKind::Issue:
    a.entity = r.get<std::string>("authority");
    a.target = r.get<std::string>("decryptor");
    break;
  case ActionKind::PublishPolicy:
    a.entity = r.get<std::string>("manager");
    a.granularity = r.name("granularity");
    a.policy = r.get<std::string>("policy");
    a.window = r.get<std::string>("window", "");
    break;
  case ActionKind::ClearCaches:
    a.entity = r.get<std::string>("decryptor");
    break;
  }
  return a;
}

template<typename T, typename F>
std::vector<T>
parseArray(const json& root, const char* key, F parse)
{
  std::vector<T> out;
  if (!root.contains(key))
    return out;
  const auto& arr = root.at(key);
  if (!arr.is_array())
    throw ConfigError(key, "expected an array");
  for (size_t i = 0; i < arr.size(); ++i)
    out.push_back(parse(arr[i], std::string(key) + "[" + std::to_string(i) + "]"));
  return out;
}

void
requireRole(const ScenarioConfig& cfg, const std::string& id, Role role, const std::string& path)
{
  const auto* e = cfg.find(id);
  if (!e)
    throw ConfigError(path, "undeclared entity '" + id + "'");
  if (e->role != role)
    throw ConfigError(path, "'" + id + "' is a " + std::string(toString(e->role)) + ", expected a " +
                              std::string(toString(role)));
}

void
checkName(const Name& n, const char* what, const std::string& path)
{
  try {
    naming::checkPrefix(n, what);
  }
  catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

} // namespace

void
validateScenario(const ScenarioConfig& cfg)
{
  try {
    cfg.topology.validate();
  }
  catch (const std::exception& e) {
    throw ConfigError("topology", e.what());
  }
  bool abe = cfg.scheme == Scheme::NacAbe;
  if (abe) {
    try {
      crypto::abeProvider(cfg.abeProvider);
    }
    catch (const std::exception& e) {
      throw ConfigError("abe_provider", e.what());
    }
  }

  std::set<std::string> ids;
  for (size_t i = 0; i < cfg.entities.size(); ++i) {
    const auto& e = cfg.entities[i];
    std::string path = "entities[" + std::to_string(i) + "]";
    if (e.id.empty() || !ids.insert(e.id).second)
      throw ConfigError(path + ".id", "empty or duplicate id '" + e.id + "'");
    if (!cfg.topology.nodes.empty()) {
      bool found = false;
      for (const auto& n : cfg.topology.nodes)
        found = found || n.id == e.node;
      if (!found)
        throw ConfigError(path + ".node", "unknown node '" + e.node + "'");
    }
    checkName(e.prefix, "entity", path + ".prefix");
    if (e.role == Role::Authority && !abe)
      throw ConfigError(path + ".role", "authorities need scheme nac-abe");
    if (e.role == Role::Authority && !e.provider.empty()) {
      try {
        crypto::abeProvider(e.provider);
      }
      catch (const std::exception& ex) {
        throw ConfigError(path + ".provider", ex.what());
      }
    }
  }
  for (size_t i = 0; i < cfg.entities.size(); ++i) {
    const auto& e = cfg.entities[i];
    std::string path = "entities[" + std::to_string(i) + "]";
    if (e.role == Role::Encryptor) {
      requireRole(cfg, e.manager, Role::Manager, path + ".manager");
      checkName(e.granularity, "granularity", path + ".granularity");
      Name producer = e.producerPrefix.value_or(e.prefix);
      if (!e.prefix.isPrefixOf(producer))
        throw ConfigError(path + ".producer_prefix", "must lie under the entity prefix");
    }
    if (abe && (e.role == Role::Manager || e.role == Role::Decryptor))
      requireRole(cfg, e.authority, Role::Authority, path + ".authority");
  }

  std::set<std::pair<std::string, Name>> granularities;
  for (size_t i = 0; i < cfg.policies.size(); ++i) {
    const auto& p = cfg.policies[i];
    std::string path = "policies[" + std::to_string(i) + "]";
    requireRole(cfg, p.manager, Role::Manager, path + ".manager");
    checkName(p.granularity, "granularity", path + ".granularity");
    if (!granularities.insert({p.manager, p.granularity}).second)
      throw ConfigError(path + ".granularity", "duplicate granularity");
    if (abe) {
      try {
        crypto::parsePolicy(p.policy);
      }
      catch (const std::exception& e) {
        throw ConfigError(path + ".policy", e.what());
      }
    }
    else {
      for (size_t k = 0; k < p.authorized.size(); ++k)
        requireRole(cfg, p.authorized[k], Role::Decryptor,
                    path + ".authorized[" + std::to_string(k) + "]");
    }
  }

  Millis last{0};
  for (size_t i = 0; i < cfg.script.size(); ++i) {
    const auto& a = cfg.script[i];
    std::string path = "script[" + std::to_string(i) + "]";
    if (a.at < last)
      throw ConfigError(path + ".at_ms", "script times must be nondecreasing");
    last = a.at;
    switch (a.kind) {
    case ActionKind::Produce:
    case ActionKind::PollNotify:
      requireRole(cfg, a.entity, Role::Encryptor, path + ".encryptor");
      break;
    case ActionKind::Consume:
    case ActionKind::ClearCaches:
      requireRole(cfg, a.entity, Role::Decryptor, path + ".decryptor");
      break;
    case ActionKind::Rotate:
    case ActionKind::TriggerReencrypt:
      requireRole(cfg, a.entity, Role::Manager, path + ".manager");
      if (abe)
        throw ConfigError(path + ".action", "rotation is a NAC action");
      for (size_t k = 0; k < a.compromised.size(); ++k)
        requireRole(cfg, a.compromised[k], Role::Decryptor,
                    path + ".compromised[" + std::to_string(k) + "]");
      break;
    case ActionKind::PublishPolicy:
      requireRole(cfg, a.entity, Role::Manager, path + ".manager");
      if (!abe)
        throw ConfigError(path + ".action", "publish_policy is a NAC-ABE action");
      break;
    case ActionKind::Issue:
      requireRole(cfg, a.entity, Role::Authority, path + ".authority");
      requireRole(cfg, a.target, Role::Decryptor, path + ".decryptor");
      break;
    case ActionKind::Link: {
      bool found = false;
      for (const auto& l : cfg.topology.links)
        found = found || l.id == a.link;
      if (!found)
        throw ConfigError(path + ".link", "unknown link '" + a.link + "'");
      break;
    }
    }
  }
}

ScenarioConfig
parseScenario(const json& j, const std::filesystem::path& baseDir)
{
  if (!j.is_object())
    throw ConfigError("$", "expected an object");
  Reader r(j, "$");
  ScenarioConfig cfg;
  cfg.seed = r.get<uint64_t>("seed", 0);
  try {
    cfg.scheme = parseScheme(r.get<std::string>("scheme"));
  }
  catch (const std::invalid_argument& e) {
    throw ConfigError("scheme", e.what());
  }
  cfg.abeProvider = r.get<std::string>("abe_provider", "simulated");
  cfg.contentSize = r.get<size_t>("content_size", 128);

  if (!j.contains("topology"))
    throw ConfigError("topology", "missing");
  const auto& topo = j.at("topology");
  try {
    if (topo.is_string()) {
      cfg.topologyRef = topo.get<std::string>();
      if (cfg.topologyRef == "battlefield") {
        cfg.topology = sim::battlefieldTopology();
      }
      else {
        std::filesystem::path p = cfg.topologyRef;
        if (p.is_relative() && !baseDir.empty())
          p = baseDir / p;
        cfg.topology = sim::TopologySpec::load(p);
      }
    }
    else if (topo.is_object()) {
      cfg.topologyRef = "inline";
      cfg.topologyJson = topo;
      cfg.topology = sim::TopologySpec::fromJson(topo);
    }
    else {
      throw ConfigError("topology", "expected a name, a path or an object");
    }
  }
  catch (const ConfigError&) {
    throw;
  }
  catch (const std::exception& e) {
    throw ConfigError("topology", e.what());
  }

  cfg.entities = parseArray<EntityConfig>(j, "entities", parseEntity);
  cfg.policies = parseArray<PolicyConfig>(j, "policies", parsePolicyEntry);
  cfg.script = parseArray<ScriptAction>(j, "script", parseAction);
  validateScenario(cfg);
  return cfg;
}

ScenarioConfig
loadScenario(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError(path.string(), "cannot open");
  json j;
  try {
    j = json::parse(in);
  }
  catch (const json::parse_error& e) {
    throw ConfigError(path.string(), e.what());
  }
  return parseScenario(j, path.parent_path());
}

json
toJson(const ScenarioConfig& cfg)
{
  json j;
  j["seed"] = cfg.seed;
  j["scheme"] = toString(cfg.scheme);
  if (cfg.scheme == Scheme::NacAbe)
    j["abe_provider"] = cfg.abeProvider;
  j["content_size"] = cfg.contentSize;
  if (cfg.topologyRef == "inline")
    j["topology"] = cfg.topologyJson;
  else
    j["topology"] = cfg.topologyRef;

  j["entities"] = json::array();
  for (const auto& e : cfg.entities) {
    json o{{"id", e.id}, {"role", toString(e.role)}, {"prefix", e.prefix.toUri()}, {"node", e.node}};
    if (e.role == Role::Encryptor) {
      o["manager"] = e.manager;
      o["granularity"] = e.granularity.toUri();
      if (e.producerPrefix)
        o["producer_prefix"] = e.producerPrefix->toUri();
      if (e.embedCk)
        o["embed_ck"] = true;
    }
    if (!e.authority.empty())
      o["authority"] = e.authority;
    if (!e.attributes.empty()) {
      o["attributes"] = json::array();
      for (const auto& a : e.attributes) {
        if (a.window.empty() && !a.fromMs && !a.toMs) {
          o["attributes"].push_back(a.base);
          continue;
        }
        json aj{{"base", a.base}};
        if (!a.window.empty())
          aj["window"] = a.window;
        if (a.fromMs)
          aj["from_ms"] = *a.fromMs;
        if (a.toMs)
          aj["to_ms"] = *a.toMs;
        o["attributes"].push_back(aj);
      }
    }
    if (e.provision)
      o["provision"] = true;
    if (!e.provider.empty())
      o["provider"] = e.provider;
    j["entities"].push_back(o);
  }

  j["policies"] = json::array();
  for (const auto& p : cfg.policies) {
    json o{{"manager", p.manager}, {"granularity", p.granularity.toUri()}};
    if (cfg.scheme == Scheme::Nac)
      o["authorized"] = p.authorized;
    else
      o["policy"] = p.policy;
    if (!p.window.empty())
      o["window"] = p.window;
    j["policies"].push_back(o);
  }

  j["script"] = json::array();
  for (const auto& a : cfg.script) {
    json o{{"at_ms", a.at.count()}, {"action", toString(a.kind)}};
    switch (a.kind) {
    case ActionKind::Produce:
      o["encryptor"] = a.entity;
      o["name"] = a.name.toUri();
      if (a.text)
        o["text"] = *a.text;
      break;
    case ActionKind::Consume:
      o["decryptor"] = a.entity;
      o["name"] = a.name.toUri();
      if (a.mustBeFresh)
        o["must_be_fresh"] = true;
      if (!a.label.empty())
        o["label"] = a.label;
      break;
    case ActionKind::Rotate:
      o["manager"] = a.entity;
      o["granularity"] = a.granularity.toUri();
      if (!a.compromised.empty())
        o["compromised"] = a.compromised;
      break;
    case ActionKind::TriggerReencrypt:
      o["manager"] = a.entity;
      o["granularity"] = a.granularity.toUri();
      break;
    case ActionKind::PollNotify:
      o["encryptor"] = a.entity;
      break;
    case ActionKind::Link:
      o["link"] = a.link;
      o["state"] = a.up ? "up" : "down";
      break;
    case ActionKind::Issue:
      o["authority"] = a.entity;
      o["decryptor"] = a.target;
      break;
    case ActionKind::PublishPolicy:
      o["manager"] = a.entity;
      o["granularity"] = a.granularity.toUri();
      o["policy"] = a.policy;
      if (!a.window.empty())
        o["window"] = a.window;
      break;
    case ActionKind::ClearCaches:
      o["decryptor"] = a.entity;
      break;
    }
    j["script"].push_back(o);
  }
  return j;
}

} // namespace nac::harness
