// Acceptance checks. `acceptance N` runs criterion N; no argument runs all.
// Each criterion prints one line: ACC<N> PASS|FAIL <title>: <detail>

#include "nac/crypto/abe.hpp"
#include "nac/crypto/hash.hpp"
#include "nac/crypto/policy.hpp"
#include "nac/harness/runner.hpp"
#include "nac/harness/scenario.hpp"
#include "nac/naming/conventions.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace nac;
using namespace nac::harness;
namespace fs = std::filesystem;

namespace {

const fs::path DIR = NAC_SCENARIO_DIR;

struct Result
{
  bool pass = false;
  std::string detail;
};

class Timer
{
public:
  double
  seconds() const
  {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - m_start).count();
  }

private:
  std::chrono::steady_clock::time_point m_start = std::chrono::steady_clock::now();
};

std::string
fixed(double v, int digits = 2)
{
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string
readFile(const fs::path& p)
{
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Full content name of every produce action, mapped to its plaintext hash.
std::map<Name, std::string>
producedHashes(const ScenarioRunner& runner)
{
  std::map<Name, std::string> out;
  const auto& cfg = runner.config();
  for (const auto& a : cfg.script) {
    if (a.kind != ActionKind::Produce)
      continue;
    const auto* enc = cfg.find(a.entity);
    Name full = enc->producerPrefix.value_or(enc->prefix) + a.name;
    out[full] = crypto::sha256Hex(runner.plaintextFor(a));
  }
  return out;
}

// ---------------------------------------------------------------------------

Result
endToEndAuthorization()
{
  Timer timer;
  auto cfg = loadScenario(DIR / "battlefield.json");
  ScenarioRunner runner(cfg);
  auto report = runner.run();
  double elapsed = timer.seconds();

  // authorized (decryptor, granularity) pairs straight from the policies
  std::set<std::pair<std::string, Name>> allowed;
  for (const auto& p : cfg.policies)
    for (const auto& d : p.authorized)
      allowed.insert({d, p.granularity});
  auto hashes = producedHashes(runner);

  std::set<std::pair<std::string, Name>> pairings;
  int good = 0, denied = 0, wrong = 0;
  for (const auto* o : report.outcomesOf(ActionKind::Consume)) {
    pairings.insert({o->entity, o->name});
    bool authorized = false;
    for (const auto& [d, g] : allowed)
      authorized = authorized || (d == o->entity && g.isPrefixOf(o->name));
    if (authorized && o->ok() && o->sha256 == hashes.at(o->name))
      ++good;
    else if (!authorized && o->status == "NotAuthorized")
      ++denied;
    else
      ++wrong;
  }
  size_t decryptors = 0;
  for (const auto& e : cfg.entities)
    decryptors += e.role == Role::Decryptor;
  size_t expectedPairings = decryptors * hashes.size();

  Result r;
  r.pass = wrong == 0 && pairings.size() == expectedPairings && expectedPairings == 6 && good + denied == 6 &&
           elapsed < 5.0;
  r.detail = std::to_string(pairings.size()) + "/" + std::to_string(expectedPairings) + " pairings, " +
             std::to_string(good) + " plaintext matches, " + std::to_string(denied) + " NotAuthorized, " +
             std::to_string(wrong) + " wrong, " + fixed(elapsed) + " s (limit 5 s)";
  return r;
}

Result
intermittentConnectivity()
{
  auto cfg = loadScenario(DIR / "outage.json");
  ScenarioRunner runner(cfg);
  auto report = runner.run();
  const auto& net = runner.network();

  Millis downAt{-1}, upAt{-1};
  sim::LinkId link;
  for (const auto& a : cfg.script)
    if (a.kind == ActionKind::Link) {
      link = a.link;
      (a.up ? upAt : downAt) = a.at;
    }
  const auto* producer = cfg.find("aircraftA");
  const auto consumes = report.outcomesOf(ActionKind::Consume);
  auto hashes = producedHashes(runner);
  Name contentName = consumes.empty() ? Name() : consumes[0]->name;

  // Data lost on the cut link while in flight
  size_t dataDropped = 0;
  // Interests that reach the producer or the manager after restoration
  size_t lateUpstream = 0;
  // content Interests the producer node ever saw
  size_t producerContentInterests = 0;
  // Data crossing the restored link from the gateway toward the consumer
  size_t servedAfterRepair = 0;
  for (const auto& e : net.trace()) {
    if (e.kind == sim::TraceKind::DropLinkDown && e.packet == sim::PacketKind::Data && e.link == link)
      ++dataDropped;
    if (e.kind == sim::TraceKind::Receive && e.packet == sim::PacketKind::Interest && e.time >= upAt &&
        (e.to == producer->node || e.to == "commandCenter"))
      ++lateUpstream;
    if (e.kind == sim::TraceKind::Receive && e.packet == sim::PacketKind::Interest && e.to == producer->node &&
        e.name == contentName)
      ++producerContentInterests;
    if (e.kind == sim::TraceKind::Send && e.packet == sim::PacketKind::Data && e.link == link &&
        e.from == "aircraftGw" && e.time >= upAt)
      ++servedAfterRepair;
  }
  uint64_t gatewayHits = net.nodeStats("aircraftGw").csHits;

  bool consumeOk = consumes.size() == 1 && consumes[0]->ok() && consumes[0]->sha256 == hashes.at(contentName) &&
                   consumes[0]->finishedAt > upAt;
  Result r;
  r.pass = consumeOk && downAt >= Millis(0) && dataDropped >= 1 && lateUpstream == 0 &&
           producerContentInterests == 1 && servedAfterRepair >= 1 && gatewayHits >= 1;
  r.detail = std::string("consume ") + (consumeOk ? "ok" : "FAILED") + " at " +
             std::to_string(consumes.empty() ? -1 : consumes[0]->finishedAt.count()) + " ms, " +
             std::to_string(dataDropped) + " Data dropped on " + link + ", " + std::to_string(gatewayHits) +
             " gateway cache hits, " + std::to_string(lateUpstream) +
             " Interests upstream after repair, producer saw " + std::to_string(producerContentInterests) +
             " content Interest";
  return r;
}

Result
scalingCounts()
{
  const size_t n = 10, m = 5, a = 4;
  Timer nacTimer;
  auto nac = reportScaling(Scheme::Nac, {n, m, a});
  double nacSeconds = nacTimer.seconds();
  Timer abeTimer;
  auto abe = reportScaling(Scheme::NacAbe, {n, m, a}, 0, "simulated");
  double abeSeconds = abeTimer.seconds();

  // independent count of the published packets by name convention
  auto count = [](const ScenarioReport& rep, PacketType t) {
    auto it = rep.packets.find(t);
    return it == rep.packets.end() ? uint64_t(0) : it->second.count;
  };
  uint64_t kdk = nac.measured.at("kdk");
  uint64_t issued = abe.measured.at("issued_key");

  Result r;
  r.pass = kdk == m * n && kdk == 50 && count(nac.run, PacketType::Kdk) == 50 && issued == n && issued == 10 &&
           nac.measured.at("kek") == m && abe.measured.at("kek") == m && nac.matches() && abe.matches() &&
           abeSeconds < 30.0 && nacSeconds < 30.0;
  r.detail = "NAC (n=10,m=5): " + std::to_string(kdk) + " KDK Data in " + fixed(nacSeconds) +
             " s; NAC-ABE (n=10,m=5,a=4, simulated): " + std::to_string(issued) + " issued-key Data in " +
             fixed(abeSeconds) + " s (limit 30 s); predicted==measured: " + (nac.matches() ? "yes" : "no") + "/" +
             (abe.matches() ? "yes" : "no");
  return r;
}

// Policy model owned by this file; the library's parser and evaluator are
// checked against it.
struct Tree
{
  bool leaf = true;
  std::string attr;
  bool isAnd = false;
  std::vector<Tree> kids;
};

bool
truth(const Tree& t, const std::set<std::string>& s)
{
  if (t.leaf)
    return s.count(t.attr) > 0;
  for (const auto& k : t.kids) {
    bool v = truth(k, s);
    if (t.isAnd && !v)
      return false;
    if (!t.isAnd && v)
      return true;
  }
  return t.isAnd;
}

std::string
render(const Tree& t, std::mt19937_64& gen)
{
  if (t.leaf)
    return t.attr;
  static const char* ands[] = {" AND ", " and ", " And "};
  static const char* ors[] = {" OR ", " or ", " Or "};
  std::string out;
  for (size_t i = 0; i < t.kids.size(); ++i) {
    if (i)
      out += t.isAnd ? ands[gen() % 3] : ors[gen() % 3];
    out += t.kids[i].leaf ? t.kids[i].attr : "( " + render(t.kids[i], gen) + " )";
  }
  return out;
}

Tree
generate(std::mt19937_64& gen, size_t& budget, const std::vector<std::string>& attrs, int depth)
{
  Tree t;
  if (budget <= 1 || depth >= 3 || gen() % 3 == 0) {
    t.attr = attrs[gen() % attrs.size()];
    --budget;
    return t;
  }
  t.leaf = false;
  t.isAnd = gen() % 2;
  size_t k = 2 + gen() % 3;
  for (size_t i = 0; i < k && budget > 0; ++i)
    t.kids.push_back(generate(gen, budget, attrs, depth + 1));
  return t.kids.size() == 1 ? t.kids[0] : t;
}

size_t
leafCount(const Tree& t)
{
  if (t.leaf)
    return 1;
  size_t n = 0;
  for (const auto& k : t.kids)
    n += leafCount(k);
  return n;
}

Result
policyEngine()
{
  const std::vector<std::string> attrs{"attr1", "attr2", "attr3", "attr4", "attr5"};
  const size_t policies = 200;
  std::mt19937_64 gen(4);
  std::vector<Tree> trees;
  std::vector<std::string> texts;
  while (trees.size() < policies) {
    size_t budget = 1 + gen() % 6;
    Tree t = generate(gen, budget, attrs, 0);
    if (leafCount(t) > 6)
      continue;
    texts.push_back(render(t, gen));
    trees.push_back(std::move(t));
  }
  std::vector<std::set<std::string>> subsets;
  for (unsigned mask = 0; mask < 32; ++mask) {
    std::set<std::string> s;
    for (size_t i = 0; i < attrs.size(); ++i)
      if (mask & (1u << i))
        s.insert(attrs[i]);
    subsets.push_back(s);
  }

  size_t satisfiesChecks = 0, satisfiesWrong = 0;
  std::vector<crypto::PolicyExpr> parsed;
  for (size_t p = 0; p < policies; ++p) {
    parsed.push_back(crypto::parsePolicy(texts[p]));
    for (const auto& s : subsets) {
      ++satisfiesChecks;
      satisfiesWrong += crypto::satisfies(s, parsed[p]) != truth(trees[p], s);
    }
  }

  std::string detail = std::to_string(policies) + " policies x 32 subsets: satisfies " +
                       std::to_string(satisfiesWrong) + "/" + std::to_string(satisfiesChecks) + " disagreements";
  size_t totalWrong = satisfiesWrong;
  for (const auto& provider : crypto::abeProviderIds()) {
    Timer timer;
    crypto::Rng rng(crypto::sha256Hex(toBytes(provider)).size());
    auto setup = crypto::abeSetup(provider, rng);
    std::vector<std::optional<crypto::AbeUserKey>> keys;
    for (const auto& s : subsets)
      keys.push_back(s.empty() ? std::nullopt : std::optional(crypto::abeKeygen(setup.master, s, rng)));
    size_t checks = 0, wrong = 0;
    for (size_t p = 0; p < policies; ++p) {
      Bytes payload = rng.bytes(32);
      auto env = crypto::abeEncrypt(setup.params, parsed[p], payload, rng);
      for (size_t k = 0; k < subsets.size(); ++k) {
        bool opened = false;
        if (keys[k]) { // the empty set cannot hold a key, so it decrypts nothing
          try {
            opened = crypto::abeDecrypt(*keys[k], env) == payload;
          }
          catch (const crypto::PolicyNotSatisfied&) {
          }
          catch (const crypto::DecryptFailed&) {
          }
        }
        ++checks;
        wrong += opened != truth(trees[p], subsets[k]);
      }
    }
    totalWrong += wrong;
    detail += "; " + provider + " decrypt " + std::to_string(wrong) + "/" + std::to_string(checks) +
              " disagreements in " + fixed(timer.seconds(), 1) + " s";
  }
  return {totalWrong == 0, detail};
}

Result
revocationSemantics()
{
  auto cfg = loadScenario(DIR / "revocation.json");
  ScenarioRunner runner(cfg);
  auto report = runner.run();
  auto hashes = producedHashes(runner);

  std::set<std::string> revoked;
  Millis rotatedAt{-1};
  for (const auto& a : cfg.script)
    if (a.kind == ActionKind::Rotate) {
      revoked.insert(a.compromised.begin(), a.compromised.end());
      rotatedAt = a.at;
    }

  // expected outcome per label: post-rotation and re-encrypted deny the
  // revoked decryptor; pre-rotation content stays readable to everyone
  using Outcomes = std::set<std::tuple<std::string, std::string, std::string>>;
  std::map<std::string, Outcomes> expected, actual;
  for (const auto* o : report.outcomesOf(ActionKind::Consume)) {
    if (o->label == "before")
      continue;
    bool denied = o->label != "pre-rotation" && revoked.count(o->entity);
    expected[o->label].insert({o->entity, o->name.toUri(), denied ? "NotAuthorized" : "ok"});
    bool plaintextRight = !o->ok() || o->sha256 == hashes.at(o->name);
    actual[o->label].insert({o->entity, o->name.toUri(), plaintextRight ? o->status : "wrong-plaintext"});
  }
  bool reencrypted = false;
  for (const auto* o : report.outcomesOf(ActionKind::PollNotify))
    reencrypted = o->ok() && o->packets >= 2;

  Result r;
  r.pass = !revoked.empty() && rotatedAt >= Millis(0) && reencrypted && expected.size() == 3 && actual == expected;
  r.detail = "revoked {";
  for (const auto& d : revoked)
    r.detail += d;
  r.detail += "}";
  for (const auto& label : {"post-rotation", "pre-rotation", "re-encrypted"}) {
    size_t ok = 0, denied = 0;
    for (const auto& [e, n, s] : actual[label])
      (s == "ok" ? ok : denied) += 1;
    r.detail += std::string("; ") + label + ": " + std::to_string(ok) + " ok, " + std::to_string(denied) +
                " denied" + (actual[label] == expected[label] ? "" : " (MISMATCH)");
  }
  if (!reencrypted)
    r.detail += "; re-encryption did not republish";
  return r;
}

// Value byte ranges of the leaf fields a mutation may hit: Content,
// SignatureValue, FreshnessPeriod, SignatureType and KeyLocator name
// components. The packet Name is excluded so routing still delivers it.
struct Span
{
  size_t begin;
  size_t end;
};

bool
readVar(const Bytes& w, size_t& pos, uint64_t& out)
{
  if (pos >= w.size())
    return false;
  uint8_t first = w[pos++];
  size_t extra = first < 253 ? 0 : first == 253 ? 2 : first == 254 ? 4 : 8;
  if (extra == 0) {
    out = first;
    return true;
  }
  if (pos + extra > w.size())
    return false;
  out = 0;
  for (size_t i = 0; i < extra; ++i)
    out = (out << 8) | w[pos++];
  return true;
}

void
collectSpans(const Bytes& w, size_t begin, size_t end, const std::vector<uint64_t>& path, std::vector<Span>& out)
{
  size_t pos = begin;
  while (pos < end) {
    uint64_t type = 0, length = 0;
    if (!readVar(w, pos, type) || !readVar(w, pos, length) || pos + length > end)
      return;
    size_t vb = pos, ve = pos + length;
    std::vector<uint64_t> here = path;
    here.push_back(type);
    bool inKeyLocator = std::find(path.begin(), path.end(), 0x1c) != path.end();
    if (type == 0x06 || type == 0x14 || type == 0x16 || type == 0x1c || (type == 0x07 && inKeyLocator))
      collectSpans(w, vb, ve, here, out);
    else if ((type == 0x15 || type == 0x17 || type == 0x19 || type == 0x1b || (type == 0x08 && inKeyLocator)) &&
             length > 0)
      out.push_back({vb, ve});
    pos = ve;
  }
}

Result
tamperDetection()
{
  Timer timer;
  auto cfg = loadScenario(DIR / "battlefield.json");
  std::vector<ScriptAction> produces;
  for (const auto& a : cfg.script)
    if (a.kind == ActionKind::Produce)
      produces.push_back(a);
  cfg.script = produces;
  ScenarioRunner runner(cfg);
  runner.run();
  auto& net = runner.network();
  auto hashes = producedHashes(runner);

  ScriptAction consume;
  consume.kind = ActionKind::Consume;
  consume.entity = "squadA-soldier1";
  consume.name = Name("/military/air/aircraftA/info");

  auto runConsume = [&](size_t index) {
    runner.decryptor(consume.entity).clearKeyCaches();
    net.clearContentStores();
    net.advanceBy(Millis(60000));
    runner.execute(index, consume);
    net.runUntilIdle();
    return runner.outcomes().back();
  };

  // baseline: the untouched chain succeeds
  auto baseline = runConsume(1000);
  if (!baseline.ok() || baseline.sha256 != hashes.at(consume.name))
    return {false, "baseline consume failed: " + baseline.status};

  std::mt19937_64 gen(6);
  const std::vector<std::string> targets{"content", "ck", "kdk"};
  std::map<std::string, size_t> perStatus, perTarget;
  size_t trials = 500, mutated = 0, wrongPlaintext = 0, accepted = 0, other = 0;
  for (size_t t = 0; t < trials; ++t) {
    const std::string target = targets[t % 3];
    bool done = false;
    net.setTamperHook([&](const sim::TraceEvent& ev, Bytes& wire) {
      if (done || ev.packet != sim::PacketKind::Data)
        return;
      auto kind = naming::classify(ev.name);
      std::string type = !kind ? "content"
                         : *kind == naming::ConventionKind::CkData ? "ck"
                         : *kind == naming::ConventionKind::KdkData ? "kdk"
                                                                     : "other";
      if (type != target)
        return;
      std::vector<Span> spans;
      collectSpans(wire, 0, wire.size(), {}, spans);
      size_t total = 0;
      for (const auto& s : spans)
        total += s.end - s.begin;
      for (int attempt = 0; attempt < 64 && total > 0; ++attempt) {
        size_t pick = gen() % total;
        size_t pos = 0;
        for (const auto& s : spans) {
          if (pick < s.end - s.begin) {
            pos = s.begin + pick;
            break;
          }
          pick -= s.end - s.begin;
        }
        Bytes m = wire;
        m[pos] ^= static_cast<uint8_t>(1 + gen() % 255);
        try {
          decodePacket(m);
        }
        catch (const MalformedPacket&) {
          continue;
        }
        wire = m;
        done = true;
        ++mutated;
        ++perTarget[target];
        return;
      }
    });
    auto out = runConsume(2000 + t);
    if (out.ok()) {
      ++accepted;
      if (out.sha256 != hashes.at(consume.name))
        ++wrongPlaintext;
    }
    else if (out.status != "SignatureInvalid" && out.status != "DecryptFailed") {
      ++other;
    }
    ++perStatus[out.status];
  }
  net.setTamperHook({});

  Result r;
  r.pass = mutated == trials && accepted == 0 && wrongPlaintext == 0 && other == 0;
  r.detail = std::to_string(mutated) + "/" + std::to_string(trials) + " mutations (content " +
             std::to_string(perTarget["content"]) + ", ck " + std::to_string(perTarget["ck"]) + ", kdk " +
             std::to_string(perTarget["kdk"]) + "); outcomes:";
  for (const auto& [s, c] : perStatus)
    r.detail += " " + s + "=" + std::to_string(c);
  r.detail += "; wrong plaintext " + std::to_string(wrongPlaintext) + "; " + fixed(timer.seconds(), 1) + " s";
  return r;
}

nlohmann::json
rowsJson(const std::vector<PacketSizeRow>& rows)
{
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows)
    j.push_back({{"type", toString(r.type)}, {"name", r.exampleName.toUri()}, {"bytes", r.bytes},
                 {"signature", r.signature}});
  return j;
}

Result
packetSizeReport()
{
  struct Case
  {
    std::string file;
    std::set<std::string> rows;
  };
  const std::vector<Case> cases{{"packet-size-nac.json", {"content", "ck", "kek", "kdk"}},
                                {"packet-size-nac-abe.json", {"content", "ck", "kek", "attribute-key"}}};
  bool pass = true;
  std::string detail;
  for (const auto& c : cases) {
    auto cfg = loadScenario(DIR / c.file);
    std::string dumps[2];
    size_t minSize = SIZE_MAX, maxSize = 0;
    std::set<std::string> types;
    std::string table;
    for (int run = 0; run < 2; ++run) {
      ScenarioRunner runner(cfg);
      auto report = runner.run();
      auto rows = reportPacketSizes(report);
      dumps[run] = rowsJson(rows).dump() + toJson(report).dump();
      if (run)
        continue;
      for (const auto& r : rows) {
        types.insert(std::string(toString(r.type)));
        table += " " + std::string(toString(r.type)) + "=" + std::to_string(r.bytes);
      }
      for (const auto& e : runner.network().trace())
        if (e.packet == sim::PacketKind::Data) {
          minSize = std::min(minSize, e.size);
          maxSize = std::max(maxSize, e.size);
        }
      for (const auto& node : runner.network().nodes())
        for (const auto& d : runner.network().repoContents(node)) {
          size_t s = encodeData(d).size();
          minSize = std::min(minSize, s);
          maxSize = std::max(maxSize, s);
        }
      // the setup the rows must describe
      bool setupOk = cfg.contentSize == 128;
      for (const auto& a : cfg.script)
        if (a.kind == ActionKind::Produce)
          setupOk = setupOk && a.name == Name("/data1");
      for (const auto& e : cfg.entities)
        if (e.role == Role::Encryptor)
          setupOk = setupOk && e.granularity == Name("/producer/dataset1/example") &&
                    e.producerPrefix == Name("/producer/dataset1/example");
      pass = pass && setupOk;
    }
    bool identical = dumps[0] == dumps[1];
    bool bounded = minSize >= 64 && maxSize <= 8800;
    pass = pass && identical && bounded && types == c.rows;
    detail += (detail.empty() ? "" : "; ") + c.file + ":" + table + " bytes, Data sizes " + std::to_string(minSize) +
              ".." + std::to_string(maxSize) + (identical ? ", identical JSON" : ", JSON DIFFERS") +
              (types == c.rows ? "" : ", ROW SET MISMATCH");
  }
  return {pass, detail};
}

Result
determinism()
{
  bool pass = true;
  size_t scenarios = 0;
  std::string bad;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(DIR))
    if (entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    auto cfg = loadScenario(f);
    ScenarioRunner a(cfg), b(cfg);
    auto ra = a.run();
    auto rb = b.run();
    bool same = ra.traceDigest == rb.traceDigest && a.network().trace().size() == b.network().trace().size() &&
                toJson(ra).dump() == toJson(rb).dump() && formatReport(ra) == formatReport(rb);
    if (same)
      for (size_t i = 0; i < a.network().trace().size(); ++i)
        same = same && a.network().trace()[i].digest == b.network().trace()[i].digest &&
               a.network().trace()[i].time == b.network().trace()[i].time;
    ++scenarios;
    if (!same) {
      pass = false;
      bad += " " + f.filename().string();
    }
  }
  return {pass && scenarios >= 8,
          std::to_string(scenarios) + " bundled scenarios run twice" +
            (bad.empty() ? ", traces and reports byte-identical" : ", differing:" + bad)};
}

Result
zeroKeyConfiguration()
{
  // files behind criteria 1-3 plus the topologies they reference
  const std::vector<fs::path> files{DIR / "battlefield.json", DIR / "outage.json", DIR / "scaling-nac.json",
                                    DIR / "scaling-nac-abe.json", DIR / "topologies/battlefield.json"};
  const std::vector<std::string> markers{"/NAC/", "/KEK", "/KDK", "/CK/", "/CK\"", "ENCRYPTED-BY", "/KEY/",
                                         "/KEY\"", "/ATTRIBUTE", "/NOTIFY"};
  size_t staticHits = 0;
  std::string texts;
  for (const auto& f : files) {
    std::string text = readFile(f);
    for (const auto& m : markers)
      for (size_t p = text.find(m); p != std::string::npos; p = text.find(m, p + 1))
        ++staticHits;
    staticHits += countKeyNames(text);
    texts += text;
  }

  size_t keyInterests = 0, leaked = 0, entities = 0;
  for (const auto& f : {"battlefield.json", "outage.json", "scaling-nac.json", "scaling-nac-abe.json"}) {
    auto cfg = loadScenario(DIR / f);
    ScenarioRunner runner(cfg);
    runner.run();
    for (const auto& e : cfg.entities) {
      ++entities;
      for (const auto& n : runner.entity(e.id).expressedInterests()) {
        if (!naming::classify(n))
          continue;
        ++keyInterests;
        // neither the name nor its key-id component was ever written down
        if (texts.find(n.toUri()) != std::string::npos ||
            texts.find(n[n.size() - 1].toString()) != std::string::npos)
          ++leaked;
      }
    }
  }
  return {staticHits == 0 && keyInterests > 0 && leaked == 0,
          std::to_string(files.size()) + " config files, " + std::to_string(staticHits) + " key names; " +
            std::to_string(keyInterests) + " key Interests derived at runtime by " + std::to_string(entities) +
            " entities, " + std::to_string(leaked) + " found in config"};
}

struct Criterion
{
  const char* title;
  std::function<Result()> run;
};

const std::vector<Criterion> CRITERIA{
  {"end-to-end authorization", endToEndAuthorization},
  {"intermittent connectivity", intermittentConnectivity},
  {"scaling counts", scalingCounts},
  {"policy engine vs truth table", policyEngine},
  {"revocation semantics", revocationSemantics},
  {"tamper detection", tamperDetection},
  {"packet-size report", packetSizeReport},
  {"determinism", determinism},
  {"zero manual key configuration", zeroKeyConfiguration},
};

bool
runOne(size_t i)
{
  Result r;
  try {
    r = CRITERIA[i].run();
  }
  catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  std::cout << "ACC" << i + 1 << " " << (r.pass ? "PASS" : "FAIL") << " " << CRITERIA[i].title << ": " << r.detail
            << std::endl;
  return r.pass;
}

} // namespace

int
main(int argc, char** argv)
{
  if (argc > 1) {
    size_t i = std::strtoul(argv[1], nullptr, 10);
    if (i < 1 || i > CRITERIA.size()) {
      std::cerr << "usage: acceptance [1-" << CRITERIA.size() << "]\n";
      return 2;
    }
    return runOne(i - 1) ? 0 : 1;
  }
  bool all = true;
  for (size_t i = 0; i < CRITERIA.size(); ++i)
    all = runOne(i) && all;
  return all ? 0 : 1;
}
