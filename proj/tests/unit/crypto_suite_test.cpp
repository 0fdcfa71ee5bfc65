#include "nac/crypto/abe.hpp"
#include "nac/crypto/hash.hpp"
#include "nac/crypto/pairing.hpp"
#include "nac/crypto/policy.hpp"
#include "nac/crypto/rsa.hpp"
#include "nac/crypto/symmetric.hpp"

#include "doctest.h"
#include "test_util.hpp"

#include <fstream>
#include <optional>

using namespace nac;
using namespace nac::crypto;

namespace {

// Independent policy model: the test builds the tree, renders text for the
// parser, and evaluates it itself.
struct TNode
{
  bool leaf = true;
  std::string attr;
  bool isAnd = false;
  std::vector<TNode> kids;
};

bool
evaluate(const TNode& n, const std::set<std::string>& attrs)
{
  if (n.leaf)
    return attrs.count(n.attr) > 0;
  if (n.isAnd)
    return std::all_of(n.kids.begin(), n.kids.end(), [&](const TNode& k) { return evaluate(k, attrs); });
  return std::any_of(n.kids.begin(), n.kids.end(), [&](const TNode& k) { return evaluate(k, attrs); });
}

std::string
text(const TNode& n, std::mt19937_64& gen)
{
  if (n.leaf)
    return n.attr;
  std::string op = n.isAnd ? (gen() % 2 ? " AND " : " and ") : (gen() % 2 ? " OR " : "  Or ");
  std::string out;
  for (size_t i = 0; i < n.kids.size(); ++i) {
    if (i > 0)
      out += op;
    out += n.kids[i].leaf ? n.kids[i].attr : "( " + text(n.kids[i], gen) + ")";
  }
  return out;
}

TNode
randomTree(std::mt19937_64& gen, size_t& leavesLeft, const std::vector<std::string>& universe, int depth = 0)
{
  TNode n;
  if (leavesLeft <= 1 || depth >= 3 || gen() % 3 == 0) {
    n.attr = universe[gen() % universe.size()];
    --leavesLeft;
    return n;
  }
  n.leaf = false;
  n.isAnd = gen() % 2;
  size_t k = 2 + gen() % 2;
  for (size_t i = 0; i < k && leavesLeft > 0; ++i)
    n.kids.push_back(randomTree(gen, leavesLeft, universe, depth + 1));
  if (n.kids.size() == 1)
    return n.kids[0];
  return n;
}

std::vector<std::set<std::string>>
allSubsets(const std::vector<std::string>& universe)
{
  std::vector<std::set<std::string>> out;
  for (size_t mask = 0; mask < (size_t(1) << universe.size()); ++mask) {
    std::set<std::string> s;
    for (size_t i = 0; i < universe.size(); ++i)
      if (mask & (size_t(1) << i))
        s.insert(universe[i]);
    out.push_back(s);
  }
  return out;
}

AesKey
keyFromHex(std::string_view hex)
{
  AesKey k{};
  Bytes b = fromHex(hex);
  std::copy(b.begin(), b.end(), k.begin());
  return k;
}

} // namespace

TEST_SUITE("crypto_suite")
{

TEST_CASE("hash vectors")
{
  CHECK(sha256Hex(toBytes("abc")) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256Hex(Bytes{}) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  // RFC 4231 test case 2
  auto mac = hmacSha256(toBytes("Jefe"), toBytes("what do ya want for nothing?"));
  CHECK(toHex(Bytes(mac.begin(), mac.end())) ==
        "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843");
}

TEST_CASE("AES-256-CBC known answer")
{
  // NIST SP 800-38A F.2.5, first two blocks; our encryption adds one pad block
  AesKey key = keyFromHex("603deb1015ca71be2b73aef0857d77811f352c073b6108d72d9810a30914dff4");
  Bytes iv = fromHex("000102030405060708090a0b0c0d0e0f");
  Bytes pt = fromHex("6bc1bee22e409f96e93d7e117393172aae2d8a571e03ac9c9eb76fac45af8e51");
  Bytes ct = aesCbcEncrypt(key, iv, pt);
  REQUIRE(ct.size() == 48);
  CHECK(toHex(Bytes(ct.begin(), ct.begin() + 32)) ==
        "f58c4c04d6e5f1ba779eabfb5f7bfbd69cfc4e967edb808d679f777bc6702c7d");
  CHECK(aesCbcDecrypt(key, iv, ct) == pt);
}

TEST_CASE("content keys")
{
  Rng rng(1);
  auto a = generateCk(rng);
  auto b = generateCk(rng);
  CHECK(a.ckId != b.ckId);
  CHECK(a.keyBytes != b.keyBytes);
  CHECK(a.ckId.size() == 16); // 8 random bytes, hex

  Rng r1(77), r2(77);
  for (int i = 0; i < 10; ++i)
    CHECK(generateCk(r1) == generateCk(r2));

  Rng many(5);
  std::set<Component> ids;
  for (int i = 0; i < 10000; ++i)
    ids.insert(generateCk(many).ckId);
  CHECK(ids.size() == 10000);
}

TEST_CASE("content encryption")
{
  Rng rng(2);
  auto ck = generateCk(rng);
  Bytes m = rng.bytes(128);
  auto env = encryptContent(ck, m, rng);
  CHECK(env.scheme == EnvelopeScheme::AesCbc);
  CHECK(env.ciphertext.size() == 144);
  CHECK(env.params.size() == AES_BLOCK_SIZE);
  CHECK(decryptContent(ck, env) == m);
  CHECK(EncryptedEnvelope::decode(env.encode()) == env);

  auto env2 = encryptContent(ck, m, rng);
  CHECK(env2.ciphertext != env.ciphertext);

  auto other = generateCk(rng);
  // wrong key: the padding check can pass by chance; it must never yield m
  std::optional<Bytes> garbage;
  try {
    garbage = decryptContent(other, env);
  }
  catch (const DecryptFailed&) {
  }
  CHECK(garbage != m);
  auto truncated = env;
  truncated.ciphertext.pop_back();
  CHECK_THROWS_AS(decryptContent(ck, truncated), DecryptFailed);
  auto empty = env;
  empty.ciphertext.clear();
  CHECK_THROWS_AS(decryptContent(ck, empty), DecryptFailed);

  std::mt19937_64 gen(3);
  for (int i = 0; i < 1000; ++i) {
    Bytes msg = test::randomBytes(gen, gen() % 300);
    auto e = encryptContent(ck, msg, rng);
    CHECK(e.ciphertext.size() == (msg.size() / 16 + 1) * 16);
    CHECK(decryptContent(ck, e) == msg);
  }
}

TEST_CASE("wrong-key decryption is reported as DecryptFailed or garbage, never a crash")
{
  Rng rng(4);
  auto ck = generateCk(rng);
  int failed = 0;
  for (int i = 0; i < 200; ++i) {
    auto env = encryptContent(ck, rng.bytes(64), rng);
    try {
      decryptContent(generateCk(rng), env);
    }
    catch (const DecryptFailed&) {
      ++failed;
    }
  }
  CHECK(failed > 150);
}

TEST_CASE("RSA-OAEP wrap and unwrap")
{
  Rng rng(5);
  auto kek = generateRsaKeyPair(rng);
  auto other = generateRsaKeyPair(rng);
  auto ck = generateCk(rng);

  auto env = wrapKey(kek.publicKey, ck.keyBytes, rng);
  CHECK(env.scheme == EnvelopeScheme::RsaOaep);
  CHECK(env.ciphertext.size() == 256);
  Bytes out = unwrapKey(kek.privateKey, env);
  CHECK(out == Bytes(ck.keyBytes.begin(), ck.keyBytes.end()));

  CHECK_THROWS_AS(unwrapKey(other.privateKey, env), DecryptFailed);
  auto tampered = env;
  tampered.ciphertext[100] ^= 0x40;
  CHECK_THROWS_AS(unwrapKey(kek.privateKey, tampered), DecryptFailed);

  CHECK_NOTHROW(wrapKey(kek.publicKey, rng.bytes(OAEP_MAX_PAYLOAD), rng));
  CHECK_THROWS_AS(wrapKey(kek.publicKey, rng.bytes(OAEP_MAX_PAYLOAD + 1), rng), PayloadTooLarge);
  CHECK(kek.privateKey.der.size() > OAEP_MAX_PAYLOAD);
  CHECK_THROWS_AS(wrapKey(kek.publicKey, kek.privateKey.der, rng), PayloadTooLarge);

  // a private key travels in a hybrid envelope instead
  auto hybrid = hybridEncrypt(other.publicKey, kek.privateKey.der, rng);
  CHECK(hybridDecrypt(other.privateKey, hybrid) == kek.privateKey.der);
  CHECK_THROWS_AS(hybridDecrypt(kek.privateKey, hybrid), DecryptFailed);

  for (int i = 0; i < 1000; ++i) {
    Bytes payload = rng.bytes(1 + rng.nextU32() % OAEP_MAX_PAYLOAD);
    if (i % 2)
      CHECK(unwrapKey(kek.privateKey, wrapKey(kek.publicKey, payload, rng)) == payload);
    else
      CHECK(hybridDecrypt(kek.privateKey, hybridEncrypt(kek.publicKey, payload, rng)) == payload);
  }
}

TEST_CASE("RSA keys are deterministic under a seed")
{
  Rng a(9), b(9);
  CHECK(generateRsaKeyPair(a).publicKey == generateRsaKeyPair(b).publicKey);
  CHECK_THROWS(validateRsaPublicKey(RsaPublicKey{Bytes{1, 2, 3}}));
}

TEST_CASE("OAEP interoperates with an independent implementation")
{
  // key and ciphertext produced by python-cryptography (OAEP, SHA-256, MGF1-SHA-256)
  std::ifstream in(NAC_TEST_DATA_DIR "/oaep-vector.txt");
  std::string derHex, ctHex;
  REQUIRE(std::getline(in, derHex));
  REQUIRE(std::getline(in, ctHex));
  EncryptedEnvelope env;
  env.scheme = EnvelopeScheme::RsaOaep;
  env.ciphertext = fromHex(ctHex);
  Bytes expected(32);
  for (size_t i = 0; i < 32; ++i)
    expected[i] = static_cast<uint8_t>(i);
  CHECK(unwrapKey(RsaPrivateKey{fromHex(derHex)}, env) == expected);
}

TEST_CASE("policy parsing")
{
  auto p = parsePolicy("(Soldier AND SquadA) OR General");
  REQUIRE(p.kind() == PolicyExpr::Kind::Or);
  REQUIRE(p.children().size() == 2);
  CHECK(p.children()[0] == PolicyExpr::allOf({PolicyExpr::attr("Soldier"), PolicyExpr::attr("SquadA")}));
  CHECK(p.children()[1] == PolicyExpr::attr("General"));
  CHECK(renderPolicy(p) == "(Soldier AND SquadA) OR General");

  CHECK(parsePolicy("attr3") == PolicyExpr::attr("attr3"));
  CHECK(parsePolicy("a AND b OR c") == parsePolicy("(a AND b) OR c"));
  CHECK(parsePolicy("a OR b AND c") == parsePolicy("a OR (b AND c)"));
  CHECK(parsePolicy("( attr1 and attr2 ) or attr3") == parsePolicy("(attr1 AND attr2) OR attr3"));
  CHECK(parsePolicy("a AND (b AND c)") == parsePolicy("a AND b AND c"));
  CHECK(policyLeaves(parsePolicy("(x AND y) OR x")) == std::vector<std::string>{"x", "y", "x"});

  for (auto bad : {"", "   ", "(a AND b", "a AND b)", "AND", "a AND", "a OR OR b", "a b", "()", "attr1 AND AND",
                   "a/b", "or"}) {
    INFO(bad);
    CHECK_THROWS_AS(parsePolicy(bad), PolicySyntaxError);
  }
  try {
    parsePolicy("(a AND b");
  }
  catch (const PolicySyntaxError& e) {
    CHECK(e.position() == 8);
  }
  CHECK(isValidAttributeName("SquadA-July8-2018"));
  CHECK_FALSE(isValidAttributeName("and"));
  CHECK_FALSE(isValidAttributeName("a b"));
}

TEST_CASE("satisfies examples")
{
  auto p = parsePolicy("(Soldier AND SquadA) OR General");
  CHECK(satisfies({"Soldier", "SquadA"}, p));
  CHECK_FALSE(satisfies({"Soldier", "SquadA"}, parsePolicy("General AND SquadA")));
  CHECK_FALSE(satisfies({}, p));
  CHECK(satisfies({"General"}, p));
}

TEST_CASE("parser and evaluator against an independent truth table")
{
  std::mt19937_64 gen(12);
  std::vector<std::string> universe{"a1", "a2", "a3", "a4", "a5", "a6"};
  auto subsets = allSubsets(universe);
  for (int i = 0; i < 300; ++i) {
    size_t leaves = 1 + gen() % 6;
    TNode tree = randomTree(gen, leaves, universe);
    std::string t = text(tree, gen);
    INFO(t);
    auto parsed = parsePolicy(t);
    std::string canonical = renderPolicy(parsed);
    CHECK(renderPolicy(parsePolicy(canonical)) == canonical);
    CHECK(parsePolicy(canonical) == parsed);
    for (const auto& s : subsets)
      CHECK(satisfies(s, parsed) == evaluate(tree, s));
  }
}

TEST_CASE("type-A curve parameters")
{
  const auto& cp = typea::params();
  CHECK(mpz_probab_prime_p(cp.p.get_mpz_t(), 40) > 0);
  CHECK(mpz_probab_prime_p(cp.r.get_mpz_t(), 40) > 0);
  CHECK(mpz_sizeinbase(cp.p.get_mpz_t(), 2) == 512);
  CHECK(mpz_sizeinbase(cp.r.get_mpz_t(), 2) == 160);
  CHECK(mpz_class(cp.p % 4) == 3);
  CHECK(cp.cofactor * cp.r == cp.p + 1);
}

TEST_CASE("pairing is bilinear and non-degenerate")
{
  using namespace typea;
  Rng rng(13);
  Point g = hashToG1(toBytes("g"));
  Point h = hashToG1(toBytes("h"));
  CHECK(isOnCurve(g));
  CHECK_FALSE(g.infinity);
  CHECK(mul(g, params().r).infinity);

  Fp2 e = pairing(g, h);
  CHECK_FALSE(e == Fp2::one());
  CHECK(pow(e, params().r) == Fp2::one());
  for (int i = 0; i < 3; ++i) {
    mpz_class a = randomZr(rng), b = randomZr(rng);
    CHECK(pairing(mul(g, a), mul(h, b)) == pow(e, a * b));
    CHECK(pairing(mul(g, a), h) == pairing(g, mul(h, a)));
  }
  // symmetric pairing
  CHECK(pairing(g, h) == pairing(h, g));
  CHECK(pairing(add(g, h), h) == mul(pairing(g, h), pairing(h, h)));
  CHECK(pairingProduct({{g, h}, {h, g}}) == mul(e, e));
  mpz_class k = randomZr(rng);
  CHECK(pairingPowProduct(std::vector<PairingTerm>{{g, h, k}, {negate(h), g, 2}}) ==
        mul(pow(e, k), inverse(mul(e, e))));
  CHECK(pairingPowProduct(std::vector<PairingTerm>{{g, h, -1}}) == inverse(e));

  CHECK(decodePoint(encodePoint(g)) == g);
  CHECK(decodeGt(encodeGt(e)) == e);
  mpz_class z = randomZr(rng);
  CHECK(decodeZr(encodeZr(z)) == z);
  Bytes junk = encodePoint(g);
  junk[5] ^= 1;
  CHECK_THROWS_AS(decodePoint(junk), std::invalid_argument);
}

TEST_CASE("ABE providers: examples")
{
  std::set<std::string> ten;
  for (int i = 1; i <= 10; ++i)
    ten.insert("attr" + std::to_string(i));
  for (const auto& id : abeProviderIds()) {
    INFO(id);
    Rng rng(14);
    auto setup = abeSetup(id, rng);
    CHECK(AbePublicParams::decode(setup.params.encode()) == setup.params);
    auto policy = parsePolicy("( attr1 and attr2 ) or attr3");
    Bytes payload = rng.bytes(32);
    auto env = abeEncrypt(setup.params, policy, payload, rng);
    CHECK(env.scheme == EnvelopeScheme::CpAbe);
    CHECK(abeEnvelopePolicy(env) == policy);
    CHECK(abeEnvelopeProvider(env) == id);

    auto all = abeKeygen(setup.master, ten, rng);
    CHECK(AbeUserKey::decode(all.encode()) == all);
    CHECK(abeDecrypt(all, env) == payload);
    auto four = abeKeygen(setup.master, {"attr4"}, rng);
    CHECK_THROWS_AS(abeDecrypt(four, env), PolicyNotSatisfied);

    auto emptyEnv = abeEncrypt(setup.params, policy, Bytes{}, rng);
    CHECK(abeDecrypt(all, emptyEnv).empty());
    CHECK_THROWS_AS(abeEncrypt(setup.params, policy, rng.bytes(ABE_MAX_PAYLOAD + 1), rng), PayloadTooLarge);
    CHECK_THROWS_AS(abeKeygen(setup.master, {}, rng), std::invalid_argument);

    auto tampered = env;
    tampered.ciphertext[3] ^= 1;
    CHECK_THROWS_AS(abeDecrypt(all, tampered), DecryptFailed);

    // key from a different setup fails
    auto setup2 = abeSetup(id, rng);
    auto foreign = abeKeygen(setup2.master, ten, rng);
    CHECK_THROWS(abeDecrypt(foreign, env));
  }
  CHECK_THROWS_AS(abeProvider("nope"), ProviderError);
}

TEST_CASE("ABE decrypt succeeds exactly when the policy is satisfied")
{
  std::vector<std::string> universe{"a1", "a2", "a3", "a4", "a5"};
  auto subsets = allSubsets(universe);
  subsets.erase(subsets.begin()); // keygen needs at least one attribute
  for (const auto& id : abeProviderIds()) {
    INFO(id);
    Rng rng(15);
    std::mt19937_64 gen(16);
    auto setup = abeSetup(id, rng);
    std::vector<AbeUserKey> keys;
    for (const auto& s : subsets)
      keys.push_back(abeKeygen(setup.master, s, rng));
    int policies = id == "reference" ? 6 : 60;
    for (int i = 0; i < policies; ++i) {
      size_t leaves = 1 + gen() % 6;
      TNode tree = randomTree(gen, leaves, universe);
      std::string t = text(tree, gen);
      INFO(t);
      Bytes payload = rng.bytes(32);
      auto env = abeEncrypt(setup.params, parsePolicy(t), payload, rng);
      for (size_t k = 0; k < subsets.size(); ++k) {
        bool expected = evaluate(tree, subsets[k]);
        bool ok = false;
        try {
          ok = abeDecrypt(keys[k], env) == payload;
        }
        catch (const PolicyNotSatisfied&) {
        }
        CHECK(ok == expected);
      }
    }
  }
}

TEST_CASE("no plaintext leaks into envelopes")
{
  Rng rng(18);
  auto ck = generateCk(rng);
  auto rsa = generateRsaKeyPair(rng);
  Bytes ckBytes(ck.keyBytes.begin(), ck.keyBytes.end());
  for (int i = 0; i < 50; ++i) {
    Bytes content = rng.bytes(128);
    auto c = encryptContent(ck, content, rng);
    CHECK_FALSE(containsSubsequence(c.encode(), Bytes(content.begin(), content.begin() + 8)));
    auto w = wrapKey(rsa.publicKey, ckBytes, rng);
    CHECK_FALSE(containsSubsequence(w.encode(), Bytes(ckBytes.begin(), ckBytes.begin() + 8)));
  }
  auto h = hybridEncrypt(rsa.publicKey, rsa.privateKey.der, rng);
  CHECK_FALSE(containsSubsequence(h.body.encode(), Bytes(rsa.privateKey.der.begin() + 20,
                                                           rsa.privateKey.der.begin() + 36)));
  for (const auto& id : abeProviderIds()) {
    auto setup = abeSetup(id, rng);
    auto env = abeEncrypt(setup.params, parsePolicy("x OR y"), ckBytes, rng);
    CHECK_FALSE(containsSubsequence(env.encode(), Bytes(ckBytes.begin(), ckBytes.begin() + 8)));
  }
}

} // TEST_SUITE
