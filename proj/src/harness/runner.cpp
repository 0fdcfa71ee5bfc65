#include "nac/harness/runner.hpp"
#include "nac/crypto/hash.hpp"

#include <iomanip>
#include <regex>
#include <set>
#include <sstream>

namespace nac::harness {

using nlohmann::json;

std::string_view
toString(PacketType t)
{
  switch (t) {
  case PacketType::Content:
    return "content";
  case PacketType::Ck:
    return "ck";
  case PacketType::Kek:
    return "kek";
  case PacketType::Kdk:
    return "kdk";
  case PacketType::AttributeKey:
    return "attribute-key";
  case PacketType::AttributeDecline:
    return "attribute-decline";
  case PacketType::Notify:
    return "notify";
  case PacketType::Other:
    return "other";
  }
  return "?";
}

PacketType
classifyData(const DataPacket& data)
{
  auto kind = naming::classify(data.name);
  if (!kind)
    return PacketType::Content;
  switch (*kind) {
  case naming::ConventionKind::Kek:
    return PacketType::Kek;
  case naming::ConventionKind::KdkData:
    return PacketType::Kdk;
  case naming::ConventionKind::CkData:
    return PacketType::Ck;
  case naming::ConventionKind::AttributeInterest:
    return data.content.empty() ? PacketType::AttributeDecline : PacketType::AttributeKey;
  case naming::ConventionKind::Notify:
    return PacketType::Notify;
  default:
    return PacketType::Other;
  }
}

std::vector<const OutcomeRecord*>
ScenarioReport::outcomesOf(ActionKind kind) const
{
  std::vector<const OutcomeRecord*> out;
  for (const auto& o : outcomes)
    if (o.action == kind)
      out.push_back(&o);
  return out;
}

ScenarioRunner::ScenarioRunner(ScenarioConfig cfg)
  : m_cfg(std::move(cfg))
{
  validateScenario(m_cfg);
  build();
}

ScenarioRunner::~ScenarioRunner()
{
  // entities hold references into the network
  m_entities.clear();
}

void
ScenarioRunner::build()
{
  bool abe = m_cfg.scheme == Scheme::NacAbe;

  sim::TopologySpec topo = m_cfg.topology;
  for (const auto& e : m_cfg.entities) {
    if (e.role == Role::Manager || e.role == Role::Authority)
      topo.addRoutesToward(e.prefix, e.node);
    else if (e.role == Role::Encryptor)
      topo.addRoutesToward(e.producerPrefix.value_or(e.prefix), e.node);
  }
  m_net = std::make_unique<sim::Network>(topo, m_cfg.seed);

  crypto::Rng root(m_cfg.seed);
  std::map<std::string, IdentityKeyPair> identities;
  for (const auto& e : m_cfg.entities) {
    auto rng = root.derive("identity/" + e.id);
    identities.emplace(e.id, generateIdentity(e.prefix, rng));
    if (e.role != Role::Decryptor)
      m_trust.add(identities.at(e.id));
  }
  auto entityRng = [&](const EntityConfig& e) { return root.derive("entity/" + e.id); };
  auto add = [&](const EntityConfig& e, std::unique_ptr<Entity> ent) {
    m_entities.emplace(e.id, std::move(ent));
    m_order.push_back(e.id);
  };

  for (const auto& e : m_cfg.entities) {
    if (e.role != Role::Authority)
      continue;
    std::string provider = e.provider.empty() ? m_cfg.abeProvider : e.provider;
    add(e, std::make_unique<AttributeAuthority>(*m_net, e.node, identities.at(e.id), entityRng(e),
                                                m_trust, provider));
  }

  for (const auto& e : m_cfg.entities) {
    if (e.role != Role::Decryptor)
      continue;
    auto rsaRng = root.derive("rsa/" + e.id);
    auto keys = crypto::generateRsaKeyPair(rsaRng);
    auto keyId = crypto::randomKeyId(rsaRng);
    if (!abe) {
      add(e, std::make_unique<Decryptor>(*m_net, e.node, identities.at(e.id), entityRng(e), m_trust,
                                         std::move(keys), keyId));
      continue;
    }
    auto* auth = authority(e.authority);
    auto dec = std::make_unique<AbeDecryptor>(*m_net, e.node, identities.at(e.id), entityRng(e), m_trust,
                                              std::move(keys), keyId, auth->prefix());
    std::vector<TimedAttribute> attrs;
    for (const auto& a : e.attributes) {
      TimedAttribute t{a.base, a.window};
      if (a.fromMs)
        t.validFrom = Millis(*a.fromMs);
      if (a.toMs)
        t.validTo = Millis(*a.toMs);
      attrs.push_back(std::move(t));
    }
    auth->registerDecryptor(dec->credential(), std::move(attrs));
    add(e, std::move(dec));
  }

  for (const auto& e : m_cfg.entities) {
    if (e.role != Role::Manager)
      continue;
    if (abe)
      add(e, std::make_unique<AbeAccessManager>(*m_net, e.node, identities.at(e.id), entityRng(e),
                                                m_trust, authority(e.authority)->publicParams()));
    else
      add(e, std::make_unique<AccessManager>(*m_net, e.node, identities.at(e.id), entityRng(e), m_trust));
  }

  for (const auto& p : m_cfg.policies) {
    if (abe) {
      abeManager(p.manager)->publishPolicyKek(p.granularity, p.policy, p.window);
      continue;
    }
    std::vector<DecryptorCredential> creds;
    for (const auto& id : p.authorized)
      creds.push_back(decryptor(id).credential());
    nacManager(p.manager)->definePolicy(p.granularity, std::move(creds));
  }

  for (const auto& e : m_cfg.entities) {
    if (e.role != Role::Encryptor)
      continue;
    EncryptorConfig ec;
    ec.producerPrefix = e.producerPrefix.value_or(e.prefix);
    ec.managerPrefix = entity(e.manager).prefix();
    ec.granularity = e.granularity;
    ec.embedCk = e.embedCk;
    if (abe)
      add(e, std::make_unique<AbeEncryptor>(*m_net, e.node, identities.at(e.id), entityRng(e), m_trust, ec));
    else
      add(e, std::make_unique<Encryptor>(*m_net, e.node, identities.at(e.id), entityRng(e), m_trust, ec));
  }

  // pre-provisioned attribute keys
  for (const auto& e : m_cfg.entities) {
    if (e.role != Role::Decryptor || !e.provision || !abe)
      continue;
    auto& dec = static_cast<AbeDecryptor&>(decryptor(e.id));
    dec.installAttributeKey(authority(e.authority)->issue(e.prefix));
  }
}

Entity&
ScenarioRunner::entity(const std::string& id) const
{
  auto it = m_entities.find(id);
  if (it == m_entities.end())
    throw std::out_of_range("no entity '" + id + "'");
  return *it->second;
}

DecryptorBase&
ScenarioRunner::decryptor(const std::string& id) const
{
  auto* d = dynamic_cast<DecryptorBase*>(&entity(id));
  if (!d)
    throw std::out_of_range("'" + id + "' is not a decryptor");
  return *d;
}

EncryptorBase&
ScenarioRunner::encryptor(const std::string& id) const
{
  auto* d = dynamic_cast<EncryptorBase*>(&entity(id));
  if (!d)
    throw std::out_of_range("'" + id + "' is not an encryptor");
  return *d;
}

AccessManager*
ScenarioRunner::nacManager(const std::string& id) const
{
  return dynamic_cast<AccessManager*>(&entity(id));
}

AbeAccessManager*
ScenarioRunner::abeManager(const std::string& id) const
{
  return dynamic_cast<AbeAccessManager*>(&entity(id));
}

AttributeAuthority*
ScenarioRunner::authority(const std::string& id) const
{
  return dynamic_cast<AttributeAuthority*>(&entity(id));
}

Bytes
ScenarioRunner::plaintextFor(const ScriptAction& action) const
{
  if (action.text)
    return toBytes(*action.text);
  const auto* e = m_cfg.find(action.entity);
  Name full = e ? e->producerPrefix.value_or(e->prefix) : Name();
  full.append(action.name);
  return crypto::Rng(m_cfg.seed).derive("content" + full.toUri()).bytes(m_cfg.contentSize);
}

std::vector<Name>
ScenarioRunner::publishedKeyNames() const
{
  std::vector<Name> out;
  for (const auto& id : m_order)
    for (const auto& d : m_entities.at(id)->published()) {
      auto t = classifyData(d);
      if (t == PacketType::Kek || t == PacketType::Kdk || t == PacketType::Ck ||
          t == PacketType::AttributeKey)
        out.push_back(d.name);
    }
  return out;
}

void
ScenarioRunner::record(OutcomeRecord rec)
{
  rec.finishedAt = m_net->now();
  m_outcomes.push_back(std::move(rec));
}

namespace {

template<typename T>
void
fillError(OutcomeRecord& rec, const Outcome<T>& o)
{
  rec.status = toString(o.error->code);
  rec.detail = o.error->detail;
}

} // namespace

void
ScenarioRunner::execute(size_t index, const ScriptAction& action)
{
  OutcomeRecord rec;
  rec.index = index;
  rec.action = action.kind;
  rec.entity = action.entity;
  rec.name = action.name;
  rec.label = action.label;
  rec.startedAt = m_net->now();
  rec.status = "ok";

  try {
    switch (action.kind) {
    case ActionKind::Produce: {
      Bytes plaintext = plaintextFor(action);
      rec.sha256 = crypto::sha256Hex(plaintext);
      encryptor(action.entity).produce(action.name, std::move(plaintext),
                                       [this, rec](const Outcome<ProduceReport>& o) mutable {
        if (o.ok())
          rec.packets = o.value->packets.size();
        else {
          fillError(rec, o);
          rec.sha256.clear();
        }
        record(std::move(rec));
      });
      return;
    }
    case ActionKind::Consume:
      decryptor(action.entity).consume(action.name, ConsumeOptions{action.mustBeFresh},
                                       [this, rec](const Outcome<Bytes>& o) mutable {
        if (o.ok())
          rec.sha256 = crypto::sha256Hex(*o.value);
        else
          fillError(rec, o);
        record(std::move(rec));
      });
      return;
    case ActionKind::PollNotify:
      encryptor(action.entity).checkForReencrypt([this, rec](const Outcome<ProduceReport>& o) mutable {
        if (o.ok())
          rec.packets = o.value->packets.size();
        else
          fillError(rec, o);
        record(std::move(rec));
      });
      return;
    case ActionKind::Rotate: {
      auto* mgr = nacManager(action.entity);
      for (const auto& id : action.compromised)
        mgr->reportCompromised(entity(id).prefix());
      mgr->rotate(action.granularity);
      rec.name = action.granularity;
      break;
    }
    case ActionKind::TriggerReencrypt:
      nacManager(action.entity)->triggerReencrypt(action.granularity);
      rec.name = action.granularity;
      break;
    case ActionKind::Link:
      m_net->setLinkState(action.link, action.up ? sim::LinkState::Up : sim::LinkState::Down);
      rec.entity = action.link;
      rec.detail = action.up ? "up" : "down";
      break;
    case ActionKind::Issue: {
      auto& dec = static_cast<AbeDecryptor&>(decryptor(action.target));
      auto data = authority(action.entity)->issue(dec.prefix());
      rec.name = data.name;
      rec.packets = 1;
      if (!dec.installAttributeKey(data)) {
        rec.status = toString(ErrorCode::DecryptFailed);
        rec.detail = "attribute key rejected";
      }
      break;
    }
    case ActionKind::PublishPolicy:
      rec.name = abeManager(action.entity)->publishPolicyKek(action.granularity, action.policy,
                                                             action.window).toName();
      rec.packets = 1;
      break;
    case ActionKind::ClearCaches:
      decryptor(action.entity).clearKeyCaches();
      break;
    }
  }
  catch (const crypto::PolicySyntaxError& e) {
    rec.status = toString(ErrorCode::PolicySyntaxError);
    rec.detail = e.what();
  }
  catch (const AttributeNotGranted& e) {
    rec.status = "AttributeNotGranted";
    rec.detail = e.what();
  }
  catch (const WindowExpired& e) {
    rec.status = "WindowExpired";
    rec.detail = e.what();
  }
  catch (const std::exception& e) {
    rec.status = "Exception";
    rec.detail = e.what();
  }
  record(std::move(rec));
}

ScenarioReport
ScenarioRunner::run()
{
  for (size_t i = 0; i < m_cfg.script.size(); ++i) {
    Millis delay = std::max(Millis(0), m_cfg.script[i].at - m_net->now());
    m_net->schedule(delay, [this, i] { execute(i, m_cfg.script[i]); });
  }
  m_net->runUntilIdle();
  return report();
}

ScenarioReport
ScenarioRunner::report() const
{
  ScenarioReport r;
  r.scheme = m_cfg.scheme;
  r.seed = m_cfg.seed;

  for (const auto& id : m_order) {
    const auto& ent = *m_entities.at(id);
    for (const auto& d : ent.published()) {
      uint64_t size = encodeData(d).size();
      auto& s = r.packets[classifyData(d)];
      if (s.count == 0) {
        s.exampleName = d.name;
        s.exampleBytes = size;
        s.minBytes = s.maxBytes = size;
      }
      ++s.count;
      s.totalBytes += size;
      s.minBytes = std::min(s.minBytes, size);
      s.maxBytes = std::max(s.maxBytes, size);
    }
    r.crypto[id] = ent.counter();
    r.interests[id] = ent.expressedInterests().size();

    if (auto* m = dynamic_cast<const AccessManager*>(&ent)) {
      r.counters["kek_published"] += m->kekPublished();
      r.counters["kdk_published"] += m->kdkPublished();
    }
    else if (auto* am = dynamic_cast<const AbeAccessManager*>(&ent)) {
      r.counters["kek_published"] += am->kekPublished();
    }
    else if (auto* a = dynamic_cast<const AttributeAuthority*>(&ent)) {
      r.counters["issued_key"] += a->issuedKeyData();
      r.counters["attribute_key_packets"] += a->keyDataPackets();
      r.counters["attribute_declined"] += a->declined();
    }
    else if (auto* e = dynamic_cast<const EncryptorBase*>(&ent)) {
      r.counters["kek_interests"] += e->kekInterests();
    }
  }
  for (const auto& l : m_net->links())
    r.links[l] = m_net->linkStats(l);
  for (const auto& n : m_net->nodes())
    r.nodes[n] = m_net->nodeStats(n);
  r.counters["interests_expressed"] = m_net->interestsExpressed();

  r.outcomes = m_outcomes;
  std::set<size_t> done;
  for (const auto& o : m_outcomes)
    done.insert(o.index);
  for (size_t i = 0; i < m_cfg.script.size(); ++i) {
    if (done.count(i) || m_cfg.script[i].at > m_net->now())
      continue;
    OutcomeRecord pending;
    pending.index = i;
    pending.action = m_cfg.script[i].kind;
    pending.entity = m_cfg.script[i].entity;
    pending.name = m_cfg.script[i].name;
    pending.label = m_cfg.script[i].label;
    pending.status = "Pending";
    r.outcomes.push_back(pending);
  }
  std::stable_sort(r.outcomes.begin(), r.outcomes.end(),
                   [](const auto& a, const auto& b) { return a.index < b.index; });

  r.traceEvents = m_net->trace().size();
  r.traceDigest = m_net->traceDigest();
  r.endTime = m_net->now();
  return r;
}

ScenarioReport
runScenario(const ScenarioConfig& cfg)
{
  return ScenarioRunner(cfg).run();
}

json
toJson(const ScenarioReport& r)
{
  json j;
  j["scheme"] = toString(r.scheme);
  j["seed"] = r.seed;
  j["end_time_ms"] = r.endTime.count();
  j["trace_events"] = r.traceEvents;
  j["trace_digest"] = r.traceDigest;

  json packets = json::object();
  for (const auto& [type, s] : r.packets)
    packets[std::string(toString(type))] = {
      {"count", s.count},
      {"total_bytes", s.totalBytes},
      {"min_bytes", s.minBytes},
      {"max_bytes", s.maxBytes},
      {"example_name", s.exampleName.toUri()},
      {"example_bytes", s.exampleBytes},
    };
  j["packets"] = packets;

  json links = json::object();
  for (const auto& [id, s] : r.links)
    links[id] = {{"interests", s.interests}, {"data", s.data}, {"bytes", s.bytes}, {"dropped", s.dropped}};
  j["links"] = links;

  json nodes = json::object();
  for (const auto& [id, s] : r.nodes)
    nodes[id] = {
      {"interests_received", s.interestsReceived},
      {"data_received", s.dataReceived},
      {"cs_hits", s.csHits},
      {"repo_hits", s.repoHits},
      {"aggregated", s.aggregated},
      {"forwarded", s.forwarded},
      {"no_route", s.noRoute},
      {"loops_dropped", s.loopsDropped},
      {"unsolicited_data", s.unsolicitedData},
      {"malformed", s.malformed},
    };
  j["nodes"] = nodes;

  json crypto = json::object();
  for (const auto& [id, c] : r.crypto) {
    json o = json::object();
    for (const auto& [k, v] : counterFields(c))
      o[k] = v;
    crypto[id] = o;
  }
  j["crypto_ops"] = crypto;
  j["interests_expressed"] = r.interests;
  j["counters"] = r.counters;

  j["outcomes"] = json::array();
  for (const auto& o : r.outcomes) {
    json oj{
      {"index", o.index},
      {"action", toString(o.action)},
      {"entity", o.entity},
      {"name", o.name.toUri()},
      {"started_ms", o.startedAt.count()},
      {"finished_ms", o.finishedAt.count()},
      {"status", o.status},
    };
    if (!o.label.empty())
      oj["label"] = o.label;
    if (!o.sha256.empty())
      oj["sha256"] = o.sha256;
    if (!o.detail.empty())
      oj["detail"] = o.detail;
    if (o.packets)
      oj["packets"] = o.packets;
    j["outcomes"].push_back(oj);
  }
  return j;
}

std::string
formatReport(const ScenarioReport& r)
{
  std::ostringstream os;
  os << "scheme " << toString(r.scheme) << ", seed " << r.seed << ", ended at " << r.endTime.count()
     << " ms, " << r.traceEvents << " trace events\n";
  os << "trace digest " << r.traceDigest << "\n\n";

  os << std::left << std::setw(20) << "packet type" << std::right << std::setw(8) << "count"
     << std::setw(12) << "bytes" << std::setw(8) << "min" << std::setw(8) << "max" << "\n";
  for (const auto& [type, s] : r.packets)
    os << std::left << std::setw(20) << toString(type) << std::right << std::setw(8) << s.count
       << std::setw(12) << s.totalBytes << std::setw(8) << s.minBytes << std::setw(8) << s.maxBytes << "\n";

  os << "\n" << std::left << std::setw(28) << "link" << std::right << std::setw(10) << "interests"
     << std::setw(8) << "data" << std::setw(12) << "bytes" << std::setw(9) << "dropped" << "\n";
  for (const auto& [id, s] : r.links)
    os << std::left << std::setw(28) << id << std::right << std::setw(10) << s.interests << std::setw(8)
       << s.data << std::setw(12) << s.bytes << std::setw(9) << s.dropped << "\n";

  os << "\ncrypto operations\n";
  for (const auto& [id, c] : r.crypto) {
    os << "  " << std::left << std::setw(24) << id;
    for (const auto& [k, v] : counterFields(c))
      if (v)
        os << " " << k << "=" << v;
    os << "\n";
  }

  os << "\noutcomes\n";
  for (const auto& o : r.outcomes) {
    os << "  [" << o.index << "] t=" << o.startedAt.count() << ".." << o.finishedAt.count() << " "
       << toString(o.action) << " " << o.entity;
    if (!o.name.empty())
      os << " " << o.name.toUri();
    os << " -> " << o.status;
    if (!o.sha256.empty())
      os << " sha256=" << o.sha256.substr(0, 16);
    if (!o.ok() && !o.detail.empty())
      os << " (" << o.detail << ")";
    os << "\n";
  }
  return os.str();
}

std::vector<PacketSizeRow>
reportPacketSizes(const ScenarioReport& r)
{
  std::vector<PacketSizeRow> rows;
  for (auto type : {PacketType::Content, PacketType::Ck, PacketType::Kek, PacketType::Kdk,
                    PacketType::AttributeKey}) {
    auto it = r.packets.find(type);
    if (it == r.packets.end())
      continue;
    rows.push_back({type, it->second.exampleName, it->second.exampleBytes});
  }
  return rows;
}

std::string
formatPacketSizes(const std::vector<PacketSizeRow>& rows)
{
  std::ostringstream os;
  if (rows.empty())
    return {};
  os << std::left << std::setw(15) << "packet" << std::right << std::setw(8) << "bytes" << "  "
     << std::left << std::setw(13) << "signature" << "name\n";
  for (const auto& row : rows)
    os << std::left << std::setw(15) << toString(row.type) << std::right << std::setw(8) << row.bytes
       << "  " << std::left << std::setw(13) << row.signature << row.exampleName.toUri() << "\n";
  return os.str();
}

ScenarioConfig
makeScalingScenario(Scheme scheme, const ScaleParams& p, uint64_t seed, std::string abeProvider)
{
  bool abe = scheme == Scheme::NacAbe;
  ScenarioConfig cfg;
  cfg.seed = seed;
  cfg.scheme = scheme;
  cfg.abeProvider = std::move(abeProvider);
  cfg.topologyRef = "battlefield";
  cfg.topology = sim::battlefieldTopology();

  if (abe) {
    EntityConfig auth;
    auth.id = "authority";
    auth.role = Role::Authority;
    auth.prefix = "/military/authority";
    auth.node = "commandCenter";
    cfg.entities.push_back(auth);
  }
  EntityConfig mgr;
  mgr.id = "manager";
  mgr.role = Role::Manager;
  mgr.prefix = "/military/control";
  mgr.node = "commandCenter";
  if (abe)
    mgr.authority = "authority";
  cfg.entities.push_back(mgr);

  size_t a = std::max<size_t>(p.a, 1);
  std::string policy;
  for (size_t k = 1; k <= a; ++k)
    policy += (k > 1 ? " AND attr" : "attr") + std::to_string(k);

  const char* producerNodes[] = {"aircraftA", "aircraftB"};
  for (size_t i = 0; i < p.m; ++i) {
    EntityConfig enc;
    enc.id = "producer" + std::to_string(i + 1);
    enc.role = Role::Encryptor;
    enc.prefix = Name("/producer").append("dataset" + std::to_string(i + 1));
    enc.node = producerNodes[i % 2];
    enc.manager = "manager";
    enc.granularity = enc.prefix;
    cfg.entities.push_back(enc);

    PolicyConfig pol;
    pol.manager = "manager";
    pol.granularity = enc.granularity;
    if (abe)
      pol.policy = policy;
    cfg.policies.push_back(pol);
  }

  const char* consumerNodes[] = {"squadA", "squadB", "squadC"};
  for (size_t j = 0; j < p.n; ++j) {
    EntityConfig dec;
    dec.id = "consumer" + std::to_string(j + 1);
    dec.role = Role::Decryptor;
    dec.prefix = Name("/military/ground").append("consumer" + std::to_string(j + 1));
    dec.node = consumerNodes[j % 3];
    if (abe) {
      dec.authority = "authority";
      for (size_t k = 1; k <= a; ++k) {
        AttributeConfig attr;
        attr.base = "attr" + std::to_string(k);
        dec.attributes.push_back(attr);
      }
      dec.provision = true;
    }
    cfg.entities.push_back(dec);
    if (!abe)
      for (auto& pol : cfg.policies)
        pol.authorized.push_back(dec.id);
  }

  for (size_t i = 0; i < p.m; ++i)
    for (size_t k = 0; k < p.x; ++k) {
      ScriptAction act;
      act.at = Millis(0);
      act.kind = ActionKind::Produce;
      act.entity = "producer" + std::to_string(i + 1);
      act.name = Name().append("data" + std::to_string(k + 1));
      cfg.script.push_back(act);
    }
  for (size_t j = 0; j < p.n; ++j)
    for (size_t i = 0; i < p.m; ++i)
      for (size_t k = 0; k < p.x; ++k) {
        ScriptAction act;
        act.at = Millis(1000);
        act.kind = ActionKind::Consume;
        act.entity = "consumer" + std::to_string(j + 1);
        act.name = Name("/producer").append("dataset" + std::to_string(i + 1)).append("data" + std::to_string(k + 1));
        cfg.script.push_back(act);
      }
  return cfg;
}

bool
ScalingReport::matches() const
{
  for (const auto& [k, v] : predicted) {
    auto it = measured.find(k);
    if (it == measured.end() || it->second != v)
      return false;
  }
  return true;
}

ScalingReport
reportScaling(Scheme scheme, const ScaleParams& p, uint64_t seed, std::string abeProvider)
{
  ScalingReport out;
  out.scheme = scheme;
  out.params = p;
  out.run = runScenario(makeScalingScenario(scheme, p, seed, std::move(abeProvider)));
  const auto& r = out.run;
  auto packets = [&](PacketType t) -> uint64_t {
    auto it = r.packets.find(t);
    return it == r.packets.end() ? 0 : it->second.count;
  };
  auto counter = [&](const std::string& k) -> uint64_t {
    auto it = r.counters.find(k);
    return it == r.counters.end() ? 0 : it->second;
  };
  CryptoOpCounter decryptors;
  for (const auto& [id, c] : r.crypto)
    if (id.rfind("consumer", 0) == 0)
      decryptors += c;
  uint64_t consumesOk = 0;
  for (const auto* o : r.outcomesOf(ActionKind::Consume))
    consumesOk += o->ok();

  uint64_t n = p.n, m = p.m, x = p.x;
  out.predicted["kek"] = m;
  out.predicted["content"] = m * x;
  out.predicted["consume_ok"] = n * m * x;
  out.measured["kek"] = packets(PacketType::Kek);
  out.measured["content"] = packets(PacketType::Content);
  out.measured["consume_ok"] = consumesOk;
  out.measured["ck"] = packets(PacketType::Ck);

  if (scheme == Scheme::Nac) {
    const auto& mc = r.crypto.at("manager");
    out.predicted["kdk"] = m * n;
    out.predicted["manager_keygen_asym"] = m;
    out.predicted["manager_rsa_encrypt"] = m * n;
    out.predicted["decryptor_rsa_decrypt"] = x ? 2 * m * n : 0;
    out.measured["kdk"] = packets(PacketType::Kdk);
    out.measured["manager_keygen_asym"] = mc.keygenAsym;
    out.measured["manager_rsa_encrypt"] = mc.rsaEncrypt;
    out.measured["decryptor_rsa_decrypt"] = decryptors.rsaDecrypt;
  }
  else {
    out.predicted["issued_key"] = n;
    out.predicted["decryptor_abe_decrypt"] = x ? m * n : 0;
    out.measured["issued_key"] = counter("issued_key");
    out.measured["attribute_key_packets"] = packets(PacketType::AttributeKey);
    out.measured["decryptor_abe_decrypt"] = decryptors.abeDecrypt;
  }
  return out;
}

json
toJson(const ScalingReport& s)
{
  json j;
  j["scheme"] = toString(s.scheme);
  j["params"] = {{"n", s.params.n}, {"m", s.params.m}, {"a", s.params.a}, {"x", s.params.x}};
  j["predicted"] = s.predicted;
  j["measured"] = s.measured;
  j["matches"] = s.matches();
  j["run"] = toJson(s.run);
  return j;
}

size_t
countKeyNames(std::string_view text)
{
  static const std::regex marker("/(NAC|KEK|KDK|CK|KEY|ENCRYPTED-BY|ATTRIBUTE|NOTIFY)(/|\")");
  std::string s(text);
  return std::distance(std::sregex_iterator(s.begin(), s.end(), marker), std::sregex_iterator());
}

ConfigBurden
reportConfigBurden(const ScenarioConfig& cfg)
{
  ConfigBurden b;
  bool abe = cfg.scheme == Scheme::NacAbe;
  std::map<std::string, std::set<size_t>> byRole;
  for (const auto& e : cfg.entities) {
    size_t count = 1; // own identity
    if (e.role == Role::Encryptor)
      count += 2 + (e.producerPrefix ? 1 : 0); // manager prefix, granularity
    if (abe && (e.role == Role::Decryptor || e.role == Role::Manager))
      count += 1; // authority prefix
    b.perEntity[e.id] = count;
    byRole[std::string(toString(e.role))].insert(count);
  }
  for (const auto& [role, counts] : byRole)
    b.perRole[role] = counts.size() == 1 ? static_cast<long>(*counts.begin()) : -1;
  b.keyNamesInConfig = countKeyNames(toJson(cfg).dump());
  return b;
}

} // namespace nac::harness
