#include "nac/crypto/hash.hpp"
#include "nac/harness/runner.hpp"
#include "nac/harness/scenario.hpp"

#include "doctest.h"

#include <fstream>
#include <sstream>

using namespace nac;
using namespace nac::harness;
using nlohmann::json;

namespace {

const std::string DIR = NAC_SCENARIO_DIR;

json
readJson(const std::string& file)
{
  std::ifstream in(DIR + "/" + file);
  return json::parse(in);
}

std::string
errorPath(const json& j)
{
  try {
    parseScenario(j, DIR);
  }
  catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

} // namespace

TEST_SUITE("harness")
{

TEST_CASE("bundled battlefield scenario loads")
{
  auto cfg = loadScenario(DIR + "/battlefield.json");
  CHECK(cfg.scheme == Scheme::Nac);
  CHECK(cfg.topology.nodes.size() == 9);
  CHECK(cfg.entities.size() == 6);
  CHECK(cfg.find("control") != nullptr);
  CHECK(cfg.find("nobody") == nullptr);
  // serialized form parses back to the same config
  auto again = parseScenario(toJson(cfg), DIR);
  CHECK(toJson(again) == toJson(cfg));
}

TEST_CASE("config errors carry a field path")
{
  json base = readJson("battlefield.json");

  json noTopo = base;
  noTopo.erase("topology");
  CHECK(errorPath(noTopo) == "topology");

  json undeclared = base;
  undeclared["script"][2]["decryptor"] = "ghost";
  CHECK(errorPath(undeclared) == "script[2].decryptor");

  json wrongRole = base;
  wrongRole["script"][2]["decryptor"] = "control";
  CHECK(errorPath(wrongRole) == "script[2].decryptor");

  json backwards = base;
  backwards["script"][3]["at_ms"] = 10;
  CHECK(errorPath(backwards) == "script[3].at_ms");

  json badScheme = base;
  badScheme["scheme"] = "rot13";
  CHECK(errorPath(badScheme) == "scheme");

  json badAction = base;
  badAction["script"][0]["action"] = "explode";
  CHECK(errorPath(badAction) == "script[0].action");

  json badLink = base;
  badLink["script"].push_back({{"at_ms", 5000}, {"action", "link"}, {"link", "squadA--squadB"}, {"state", "down"}});
  CHECK(errorPath(badLink) == "script[8].link");

  json policyForAbe = base;
  policyForAbe["script"].push_back({{"at_ms", 5000}, {"action", "publish_policy"}, {"manager", "control"},
                                    {"granularity", "/x"}, {"policy", "a"}});
  CHECK(errorPath(policyForAbe) == "script[8].action");

  json badPrefix = base;
  badPrefix["entities"][1]["granularity"] = "/military/KEK";
  CHECK(errorPath(badPrefix).rfind("entities[1]", 0) == 0);

  json dupId = base;
  dupId["entities"][2]["id"] = "control";
  CHECK(errorPath(dupId).rfind("entities[2]", 0) == 0);

  CHECK_THROWS_AS(loadScenario(DIR + "/does-not-exist.json"), ConfigError);
}

TEST_CASE("battlefield outcomes")
{
  auto report = runScenario(loadScenario(DIR + "/battlefield.json"));
  auto consumes = report.outcomesOf(ActionKind::Consume);
  REQUIRE(consumes.size() == 6);
  std::map<std::pair<std::string, std::string>, std::string> status;
  for (auto* o : consumes)
    status[{o->entity, o->name.toUri()}] = o->status;
  CHECK(status[{"squadA-soldier1", "/military/command/squadA/order1"}] == "ok");
  CHECK(status[{"squadB-soldier1", "/military/command/squadA/order1"}] == "NotAuthorized");
  CHECK(status[{"aircraftA-crew", "/military/command/squadA/order1"}] == "NotAuthorized");
  CHECK(status[{"squadA-soldier1", "/military/air/aircraftA/info"}] == "ok");
  CHECK(status[{"squadB-soldier1", "/military/air/aircraftA/info"}] == "ok");
  CHECK(status[{"aircraftA-crew", "/military/air/aircraftA/info"}] == "NotAuthorized");
  for (auto* o : consumes)
    if (o->ok())
      CHECK(o->sha256 ==
            crypto::sha256Hex(toBytes(o->name == Name("/military/air/aircraftA/info")
                                        ? "surveillance: convoy moving north on route 7"
                                        : "squad A: hold the bridge until 0600")));
}

TEST_CASE("determinism and seed sensitivity")
{
  auto cfg = loadScenario(DIR + "/battlefield.json");
  auto a = runScenario(cfg);
  auto b = runScenario(cfg);
  CHECK(a.traceDigest == b.traceDigest);
  CHECK(toJson(a).dump() == toJson(b).dump());
  CHECK(formatReport(a) == formatReport(b));
  cfg.seed = 42;
  auto c = runScenario(cfg);
  CHECK(c.traceDigest != a.traceDigest);
}

TEST_CASE("packet-size rows")
{
  auto nacReport = runScenario(loadScenario(DIR + "/packet-size-nac.json"));
  auto rows = reportPacketSizes(nacReport);
  std::set<std::string> types;
  for (const auto& r : rows) {
    types.insert(std::string(toString(r.type)));
    CHECK(r.bytes > 0);
    CHECK(r.signature == "SHA256ECDSA");
    CHECK(r.bytes == nacReport.packets.at(r.type).exampleBytes);
  }
  CHECK(types == std::set<std::string>{"content", "ck", "kek", "kdk"});
  auto contentRow = std::find_if(rows.begin(), rows.end(), [](const auto& r) { return r.type == PacketType::Content; });
  CHECK(contentRow->exampleName == Name("/producer/dataset1/example/data1"));

  // row bytes are the encoded length of the packet the repo holds
  ScenarioRunner runner(loadScenario(DIR + "/packet-size-nac.json"));
  runner.run();
  for (const auto& node : runner.network().nodes())
    for (const auto& d : runner.network().repoContents(node))
      if (d.name == contentRow->exampleName)
        CHECK(encodeData(d).size() == contentRow->bytes);

  auto abeRows = reportPacketSizes(runScenario(loadScenario(DIR + "/packet-size-nac-abe.json")));
  std::set<std::string> abeTypes;
  for (const auto& r : abeRows)
    abeTypes.insert(std::string(toString(r.type)));
  CHECK(abeTypes.count("attribute-key") == 1);
  CHECK(abeTypes.count("kdk") == 0);

  // empty run, empty table
  ScenarioConfig empty = loadScenario(DIR + "/battlefield.json");
  empty.script.clear();
  empty.policies.clear();
  auto emptyRows = reportPacketSizes(runScenario(empty));
  CHECK(emptyRows.empty());
  CHECK(formatPacketSizes(emptyRows).empty());
}

TEST_CASE("scaling counts")
{
  auto r = reportScaling(Scheme::Nac, {3, 2, 0});
  CHECK(r.matches());
  CHECK(r.measured.at("kdk") == 6);
  CHECK(r.measured.at("kek") == 2);
  CHECK(r.measured.at("manager_keygen_asym") == 2);
  CHECK(r.measured.at("manager_rsa_encrypt") == 6);
  // two RSA decryptions per cold consume chain: KDK hybrid unwrap and CK unwrap
  CHECK(r.measured.at("decryptor_rsa_decrypt") == 2 * 3 * 2);

  auto zero = reportScaling(Scheme::Nac, {0, 2, 0});
  CHECK(zero.matches());
  CHECK(zero.measured.at("kdk") == 0);
  CHECK(zero.measured.at("consume_ok") == 0);

  auto abe = reportScaling(Scheme::NacAbe, {10, 5, 4});
  CHECK(abe.matches());
  CHECK(abe.measured.at("issued_key") == 10);

  auto j = toJson(r);
  CHECK(j.contains("predicted"));
  CHECK(j.contains("measured"));
}

TEST_CASE("configuration burden is independent of the number of keys")
{
  auto burden = [](Scheme s, size_t n, size_t m) { return reportConfigBurden(makeScalingScenario(s, {n, m, 3})); };
  for (auto scheme : {Scheme::Nac, Scheme::NacAbe}) {
    auto small = burden(scheme, 1, 1);
    auto large = burden(scheme, 8, 5);
    CHECK(small.perRole == large.perRole);
    for (const auto& [role, count] : large.perRole)
      CHECK(count >= 1);
    CHECK(large.keyNamesInConfig == 0);
  }
  auto nac = burden(Scheme::Nac, 4, 3);
  CHECK(nac.perRole.at("decryptor") == 1);
  CHECK(nac.perRole.at("encryptor") == 3); // identity, manager, granularity

  CHECK(countKeyNames(R"({"name":"/m/NAC/g/KEK/1"})") > 0);
  CHECK(countKeyNames(R"({"name":"/a/CK/ENCRYPTED-BY/x"})") > 0);
  CHECK(countKeyNames(R"({"name":"/military/air/aircraftA/info"})") == 0);
  for (auto file : {"battlefield.json", "outage.json", "scaling-nac.json", "scaling-nac-abe.json"}) {
    std::ifstream in(DIR + "/" + file);
    std::stringstream ss;
    ss << in.rdbuf();
    INFO(file);
    CHECK(countKeyNames(ss.str()) == 0);
  }
}

TEST_CASE("conservation of packets")
{
  ScenarioRunner runner(loadScenario(DIR + "/outage.json"));
  auto report = runner.run();
  const auto& net = runner.network();

  std::map<std::string, uint64_t> sends, ends;
  uint64_t interestReceives = 0;
  for (const auto& e : net.trace()) {
    if (e.kind == sim::TraceKind::Send)
      ++sends[e.packet == sim::PacketKind::Interest ? "I" : "D"];
    else
      ++ends[e.packet == sim::PacketKind::Interest ? "I" : "D"];
    if (e.kind == sim::TraceKind::Receive && e.packet == sim::PacketKind::Interest)
      ++interestReceives;
  }
  // every link transmission ends in exactly one delivery or drop
  CHECK(sends == ends);

  uint64_t linkInterests = 0, linkData = 0, received = 0;
  for (const auto& [id, s] : report.links) {
    linkInterests += s.interests;
    linkData += s.data;
  }
  CHECK(linkInterests == sends["I"]);
  CHECK(linkData == sends["D"]);

  for (const auto& [node, s] : report.nodes) {
    INFO(node);
    // each arriving Interest is dropped, answered, aggregated or forwarded exactly once
    CHECK(s.interestsReceived ==
          s.loopsDropped + s.csHits + s.repoHits + s.aggregated + s.noRoute + s.forwarded + s.malformed);
    received += s.interestsReceived;
  }
  // arrivals come from applications or from links
  CHECK(received == net.interestsExpressed() + interestReceives);

  // per-type stats add up
  for (const auto& [type, st] : report.packets) {
    CHECK(st.count >= 1);
    CHECK(st.totalBytes >= st.count * st.minBytes);
    CHECK(st.totalBytes <= st.count * st.maxBytes);
  }
}

TEST_CASE("passive eavesdropper never sees plaintext")
{
  auto cfg = loadScenario(DIR + "/battlefield.json");
  ScenarioRunner runner(cfg);
  std::vector<Bytes> tapped;
  runner.network().setTamperHook([&](const sim::TraceEvent&, Bytes& wire) { tapped.push_back(wire); });
  auto report = runner.run();
  CHECK(tapped.size() > 10);
  for (const auto& action : cfg.script) {
    if (action.kind != ActionKind::Produce)
      continue;
    Bytes text = runner.plaintextFor(action);
    for (const auto& w : tapped)
      CHECK_FALSE(containsSubsequence(w, Bytes(text.begin(), text.begin() + 16)));
  }
}

TEST_CASE("repeated Interests are absorbed by caches")
{
  auto cfg = loadScenario(DIR + "/battlefield.json");
  ScenarioRunner runner(cfg);
  runner.run();
  auto& net = runner.network();
  uint64_t upstreamBefore = net.linkStats("aircraftGw--squadGw").interests;
  uint64_t producerBefore = net.nodeStats("aircraftA").interestsReceived;

  const int k = 50;
  int satisfied = 0;
  for (int i = 0; i < k; ++i) {
    InterestPacket interest;
    interest.name = Name("/military/air/aircraftA/info");
    net.expressInterest("squadC", interest, [&](const sim::FetchResult& r) {
      satisfied += r.status == sim::FetchStatus::Satisfied;
    });
    net.advanceBy(Millis(100));
  }
  net.runUntilIdle();
  CHECK(satisfied == k);
  CHECK(net.linkStats("aircraftGw--squadGw").interests - upstreamBefore <= 1);
  CHECK(net.nodeStats("aircraftA").interestsReceived == producerBefore);
}

} // TEST_SUITE
