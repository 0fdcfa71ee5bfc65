#include "nac/abe/abe_access_manager.hpp"
#include "nac/abe/abe_decryptor.hpp"
#include "nac/abe/abe_encryptor.hpp"
#include "nac/abe/attribute_authority.hpp"
#include "nac/entities/payloads.hpp"
#include "nac/harness/runner.hpp"
#include "nac/naming/conventions.hpp"

#include "deployment.hpp"
#include "doctest.h"

using namespace nac;
using namespace nac::naming;

namespace {

const Name MANAGER("/military/control");
const Name AUTHORITY("/military/authority");
const Name AIRCRAFT("/military/air/aircraftA");
const std::string POLICY = "(Soldier AND SquadA) OR General";

struct AbeBattlefield
{
  test::Deployment d;
  std::unique_ptr<AttributeAuthority> authority;
  std::unique_ptr<AbeAccessManager> manager;
  std::unique_ptr<AbeEncryptor> aircraft;
  std::map<std::string, std::unique_ptr<AbeDecryptor>> decs;

  explicit
  AbeBattlefield(const std::string& provider = "simulated")
    : d(sim::battlefieldTopology(), {{MANAGER, "commandCenter"}, {AUTHORITY, "commandCenter"}, {AIRCRAFT, "aircraftA"}})
  {
    authority = std::make_unique<AttributeAuthority>(*d.net, "commandCenter", d.identity(AUTHORITY),
                                                     d.rng("authority"), d.trust, provider);
    manager = std::make_unique<AbeAccessManager>(*d.net, "commandCenter", d.identity(MANAGER), d.rng("manager"),
                                                 d.trust, authority->publicParams());
    EncryptorConfig cfg;
    cfg.producerPrefix = AIRCRAFT;
    cfg.managerPrefix = MANAGER;
    cfg.granularity = AIRCRAFT;
    aircraft = std::make_unique<AbeEncryptor>(*d.net, "aircraftA", d.identity(AIRCRAFT), d.rng("aircraft"), d.trust, cfg);
  }

  AbeDecryptor&
  add(const std::string& label, const Name& prefix, const sim::NodeId& node, std::vector<TimedAttribute> attrs)
  {
    auto keyRng = d.rng("rsa" + prefix.toUri());
    auto keys = crypto::generateRsaKeyPair(keyRng);
    d.decryptorKeys[prefix] = keys;
    auto dec = std::make_unique<AbeDecryptor>(*d.net, node, d.identity(prefix), d.rng(prefix.toUri()), d.trust, keys,
                                              crypto::randomKeyId(keyRng), AUTHORITY);
    authority->registerDecryptor(dec->credential(), std::move(attrs));
    auto& ref = *dec;
    decs[label] = std::move(dec);
    return ref;
  }
};

std::vector<TimedAttribute>
plain(std::initializer_list<const char*> names, std::string window = {})
{
  std::vector<TimedAttribute> out;
  for (auto n : names)
    out.push_back(TimedAttribute{n, window});
  return out;
}

bool
isError(const Outcome<Bytes>& o, ErrorCode code)
{
  return !o.ok() && o.error->code == code;
}

} // namespace

TEST_SUITE("nac_abe_entities")
{

TEST_CASE("timed attributes")
{
  TimedAttribute a{"SquadA", "July8-2018", Millis(0), Millis(1000)};
  CHECK(a.rendered() == "SquadA-July8-2018");
  CHECK(a.validAt(Millis(999)));
  CHECK_FALSE(a.validAt(Millis(1000)));
  TimedAttribute b{"SquadA", "July9-2018", Millis(1000)};
  CHECK(a.rendered() != b.rendered());
  CHECK(renderPolicyForWindow(POLICY, "July8") == "(Soldier-July8 AND SquadA-July8) OR General-July8");
  CHECK(renderPolicyForWindow(POLICY, "") == POLICY);
}

TEST_CASE("authority issues one encrypted bundle")
{
  AbeBattlefield b;
  auto& s = b.add("soldier", Name("/military/ground/squadA/soldier1"), "squadA", plain({"Soldier", "SquadA"}));
  DataPacket key = b.authority->issue(s.prefix());
  CHECK(b.authority->issuedKeyData() == 1);
  CHECK(b.d.trust.verify(key));
  auto name = parseAttributeInterestName(key.name);
  CHECK(name.authority == AUTHORITY);
  CHECK(name.decryptor == s.prefix());
  CHECK(name.attribute == Component("Soldier"));

  // only the addressed decryptor's RSA key opens it
  auto payload = HybridPayload::decode(key.content);
  auto blob = crypto::hybridDecrypt(b.d.decryptorKeys.at(s.prefix()).privateKey, payload.ct);
  auto userKey = crypto::AbeUserKey::decode(blob);
  CHECK(userKey.attributes == std::set<std::string>{"Soldier", "SquadA"});
  crypto::Rng other(3);
  CHECK_THROWS_AS(crypto::hybridDecrypt(crypto::generateRsaKeyPair(other).privateKey, payload.ct),
                  crypto::DecryptFailed);

  CHECK(s.installAttributeKey(key));
  REQUIRE(s.attributeKey().has_value());
  CHECK(s.attributeKey()->attributes == userKey.attributes);

  // the bundle is re-served, not regenerated, for another attribute name
  DataPacket alias = b.authority->issue(s.prefix(), "SquadA");
  CHECK(parseAttributeInterestName(alias.name).attribute == Component("SquadA"));
  CHECK(b.authority->issuedKeyData() == 1);
  CHECK(alias.content == key.content);

  CHECK_THROWS_AS(b.authority->issue(s.prefix(), "General"), AttributeNotGranted);
  CHECK_THROWS_AS(b.authority->issue(Name("/nobody")), AttributeNotGranted);
}

TEST_CASE("window expiry")
{
  AbeBattlefield b;
  std::vector<TimedAttribute> attrs{{"Soldier", "July8", Millis(0), Millis(5000)},
                                    {"SquadA", "July8", Millis(0), Millis(5000)}};
  auto& s = b.add("soldier", Name("/military/ground/squadA/soldier1"), "squadA", attrs);
  CHECK_NOTHROW(b.authority->issue(s.prefix()));
  b.d.net->advance(Millis(6000));
  CHECK_THROWS_AS(b.authority->issue(s.prefix(), "Soldier-July8"), WindowExpired);
  // requests name rendered attributes; the bare base was never granted
  CHECK_THROWS_AS(b.authority->issue(s.prefix(), "Soldier"), AttributeNotGranted);
  CHECK_THROWS_AS(b.authority->issue(s.prefix()), WindowExpired);
}

TEST_CASE("policy KEK naming")
{
  AbeBattlefield b;
  auto kek = b.manager->publishPolicyKek(AIRCRAFT, POLICY);
  CHECK(kek.toName().toUri() ==
        "/military/control/NAC/military/air/aircraftA/KEK/(Soldier%20AND%20SquadA)%20OR%20General");
  CHECK(crypto::parsePolicy(kek.keyId.toString()) == crypto::parsePolicy(POLICY));
  CHECK(b.manager->kekPublished() == 1);
  auto repo = b.d.net->repoContents("commandCenter");
  auto it = std::find_if(repo.begin(), repo.end(), [&](const DataPacket& p) { return p.name == kek.toName(); });
  REQUIRE(it != repo.end());
  CHECK(crypto::AbePublicParams::decode(it->content) == b.authority->publicParams());

  // non-canonical input is stored canonically
  auto messy = b.manager->publishPolicyKek(Name("/g2"), "( attr1 and attr2 ) or attr3");
  CHECK(messy.keyId.toString() == "(attr1 AND attr2) OR attr3");

  auto other = b.manager->publishPolicyKek(AIRCRAFT, "General");
  CHECK(other.keyId != kek.keyId);
  CHECK(*b.manager->currentKek(AIRCRAFT) == other);

  CHECK_THROWS_AS(b.manager->publishPolicyKek(AIRCRAFT, ""), crypto::PolicySyntaxError);
  CHECK_THROWS_AS(b.manager->publishPolicyKek(AIRCRAFT, "(a AND"), crypto::PolicySyntaxError);
  CHECK_THROWS_AS(b.manager->publishPolicyKek(Name("/x/KEK"), "a"), NameConventionViolation);
}

TEST_CASE("produce and consume under a policy")
{
  for (std::string provider : {"simulated", "reference"}) {
    INFO(provider);
    AbeBattlefield b(provider);
    auto& a = b.add("a", Name("/military/ground/squadA/soldier1"), "squadA", plain({"Soldier", "SquadA"}));
    auto& bb = b.add("b", Name("/military/ground/squadB/soldier1"), "squadB", plain({"Soldier", "SquadB"}));
    auto& g = b.add("g", Name("/military/general"), "commandCenter", plain({"General"}));
    b.manager->publishPolicyKek(AIRCRAFT, POLICY);

    auto out = b.d.produce(*b.aircraft, "/info", "enemy at grid 7");
    REQUIRE(out.ok());
    CHECK(out.value->packets.size() == 2);
    REQUIRE(b.aircraft->policy().has_value());
    CHECK(*b.aircraft->policy() == crypto::parsePolicy(POLICY));
    CHECK(b.aircraft->kekInterests() == 1);
    REQUIRE(b.d.produce(*b.aircraft, "/info2", "x").ok());
    CHECK(b.aircraft->kekInterests() == 1);

    auto okA = b.d.consume(a, Name("/military/air/aircraftA/info"));
    REQUIRE(okA.ok());
    CHECK(toString(*okA.value) == "enemy at grid 7");
    CHECK(a.attributeInterests() >= 1);
    CHECK(isError(b.d.consume(bb, Name("/military/air/aircraftA/info")), ErrorCode::NotAuthorized));
    auto okG = b.d.consume(g, Name("/military/air/aircraftA/info"));
    REQUIRE(okG.ok());

    // warm: no further attribute request
    auto before = a.attributeInterests();
    REQUIRE(b.d.consume(a, Name("/military/air/aircraftA/info2")).ok());
    CHECK(a.attributeInterests() == before);
    CHECK(b.authority->issuedKeyData() == 3);
  }
}

TEST_CASE("pre-provisioned key avoids attribute Interests")
{
  AbeBattlefield b;
  auto& a = b.add("a", Name("/military/ground/squadA/soldier1"), "squadA", plain({"Soldier", "SquadA"}));
  REQUIRE(a.installAttributeKey(b.authority->issue(a.prefix())));
  b.manager->publishPolicyKek(AIRCRAFT, POLICY);
  REQUIRE(b.d.produce(*b.aircraft, "/info", "v").ok());
  REQUIRE(b.d.consume(a, Name("/military/air/aircraftA/info")).ok());
  CHECK(a.attributeInterests() == 0);
  const auto& names = a.expressedInterests();
  CHECK(std::none_of(names.begin(), names.end(),
                     [](const Name& n) { return classify(n) == ConventionKind::AttributeInterest; }));
}

TEST_CASE("malformed policy in a KEK fails closed")
{
  AbeBattlefield b;
  // a KEK signed by the manager whose key-id is not a policy
  auto badName = makeKekName(MANAGER, AIRCRAFT, Component(std::string("attr1 AND AND")));
  IdentityKeyPair managerId = b.manager->identity();
  b.d.net->publish("commandCenter", signData(badName.toName(), b.authority->publicParams().encode(), KEY_FRESHNESS,
                                             managerId));
  auto out = b.d.produce(*b.aircraft, "/info", "secret");
  REQUIRE_FALSE(out.ok());
  CHECK(out.error->code == ErrorCode::PolicySyntaxError);
  CHECK(b.d.net->repoContents("aircraftA").empty());
  CHECK(b.aircraft->published().empty());
}

TEST_CASE("expired attributes: refresh is declined")
{
  AbeBattlefield b;
  std::vector<TimedAttribute> attrs{{"Soldier", "July8", Millis(0), Millis(10000)},
                                    {"SquadA", "July8", Millis(0), Millis(10000)},
                                    {"Soldier", "July9", Millis(10000), Millis::max()}};
  auto& s = b.add("s", Name("/military/ground/squadA/soldier1"), "squadA", attrs);
  REQUIRE(s.installAttributeKey(b.authority->issue(s.prefix())));
  CHECK(s.attributeKey()->attributes == std::set<std::string>{"Soldier-July8", "SquadA-July8"});

  b.manager->publishPolicyKek(AIRCRAFT, "Soldier AND SquadA", "July8");
  REQUIRE(b.d.produce(*b.aircraft, "/day1", "one").ok());
  REQUIRE(b.d.consume(s, Name("/military/air/aircraftA/day1")).ok());

  // the window rolls; the KEK for the new window names July9 leaves
  b.d.net->advance(Millis(20000) + KEY_FRESHNESS);
  b.manager->publishPolicyKek(AIRCRAFT, "Soldier AND SquadA", "July9");
  auto day2 = b.d.produce(*b.aircraft, "/day2", "two");
  REQUIRE(day2.ok());
  CHECK(day2.value->kek.keyId.toString() == "Soldier-July9 AND SquadA-July9");

  auto denied = b.d.consume(s, Name("/military/air/aircraftA/day2"));
  CHECK(isError(denied, ErrorCode::NotAuthorized));
  CHECK(b.authority->declined() >= 1);
  // the July8 key still opens July8 content
  CHECK(b.d.consume(s, Name("/military/air/aircraftA/day1")).ok());
}

TEST_CASE("window monotonicity at the crypto layer")
{
  for (const auto& id : crypto::abeProviderIds()) {
    crypto::Rng rng(21);
    auto setup = crypto::abeSetup(id, rng);
    auto key = crypto::abeKeygen(setup.master, {"Soldier-w1", "SquadA-w1", "General-w1"}, rng);
    for (std::string w : {"w0", "w2", "w10"}) {
      auto env = crypto::abeEncrypt(setup.params, crypto::parsePolicy(renderPolicyForWindow(POLICY, w)),
                                    rng.bytes(32), rng);
      CHECK_THROWS_AS(crypto::abeDecrypt(key, env), crypto::PolicyNotSatisfied);
    }
    auto same = crypto::abeEncrypt(setup.params, crypto::parsePolicy(renderPolicyForWindow(POLICY, "w1")),
                                   Bytes(32, 7), rng);
    CHECK(crypto::abeDecrypt(key, same) == Bytes(32, 7));
  }
}

TEST_CASE("tampered attribute key is rejected")
{
  AbeBattlefield b;
  auto& s = b.add("s", Name("/military/ground/squadA/soldier1"), "squadA", plain({"Soldier", "SquadA"}));
  DataPacket key = b.authority->issue(s.prefix());
  key.content[key.content.size() / 2] ^= 0x10;
  CHECK_FALSE(s.installAttributeKey(key));
  CHECK_FALSE(s.attributeKey().has_value());
}

TEST_CASE("packet-count scaling against the NAC baseline")
{
  for (auto [n, m, a] : std::vector<std::tuple<size_t, size_t, size_t>>{{3, 2, 3}, {10, 5, 4}}) {
    INFO(n << "," << m << "," << a);
    auto nac = harness::reportScaling(harness::Scheme::Nac, {n, m, a});
    auto abe = harness::reportScaling(harness::Scheme::NacAbe, {n, m, a});
    CHECK(nac.matches());
    CHECK(abe.matches());
    CHECK(nac.measured.at("kek") == m);
    CHECK(nac.measured.at("kdk") == m * n);
    CHECK(abe.measured.at("kek") == m);
    CHECK(abe.measured.at("issued_key") == n);
    CHECK(abe.measured.count("kdk") == 0);
  }
}

} // TEST_SUITE
