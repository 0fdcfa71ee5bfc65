#include "nac/crypto/abe.hpp"
#include "nac/crypto/hash.hpp"
#include "nac/crypto/pairing.hpp"
#include "nac/crypto/symmetric.hpp"
#include "nac/wire/tlv.hpp"

#include <map>
#include <mutex>
#include <optional>

namespace nac::crypto {

namespace {

Bytes
viewBytes(ByteView v)
{
  return Bytes(v.begin(), v.end());
}

struct AbeEnvelopeParams
{
  std::string providerId;
  std::string policy;
  Bytes header;
  Bytes iv;

  Bytes
  encode() const
  {
    Bytes out;
    tlv::appendTlv(out, tlv::AbeProviderId, toBytes(providerId));
    tlv::appendTlv(out, tlv::AbePolicy, toBytes(policy));
    tlv::appendTlv(out, tlv::AbeHeader, header);
    tlv::appendTlv(out, tlv::InitializationVector, iv);
    return out;
  }

  static AbeEnvelopeParams
  decode(ByteView wire)
  {
    tlv::Reader r(wire);
    AbeEnvelopeParams p;
    p.providerId = toString(r.expect(tlv::AbeProviderId).value);
    p.policy = toString(r.expect(tlv::AbePolicy).value);
    p.header = viewBytes(r.expect(tlv::AbeHeader).value);
    p.iv = viewBytes(r.expect(tlv::InitializationVector).value);
    r.expectEnd();
    if (p.iv.size() != GCM_IV_SIZE)
      throw tlv::Error("bad ABE envelope IV");
    return p;
  }
};

AesKey
toAesKey(const Digest& d)
{
  AesKey k;
  std::copy(d.begin(), d.end(), k.begin());
  return k;
}

void
checkAttributes(const std::set<std::string>& attributes)
{
  if (attributes.empty())
    throw std::invalid_argument("attribute set is empty");
  for (const auto& a : attributes)
    if (!isValidAttributeName(a))
      throw std::invalid_argument("invalid attribute name '" + a + "'");
}

void
checkPayload(ByteView payload)
{
  if (payload.size() > ABE_MAX_PAYLOAD)
    throw PayloadTooLarge("ABE payload exceeds " + std::to_string(ABE_MAX_PAYLOAD) + " bytes");
}

/// Canonical tree shape, as a decryptor will reconstruct it from the text.
PolicyExpr
canonical(const PolicyExpr& policy, std::string& text)
{
  text = renderPolicy(policy);
  return parsePolicy(text);
}

// ---------------------------------------------------------------------------
// simulated

class SimulatedProvider final : public AbeProvider
{
public:
  std::string_view
  id() const noexcept final
  {
    return "simulated";
  }

  AbeSetupResult
  setup(Rng& rng) const final
  {
    Bytes secret = rng.bytes(32);
    return {{std::string(id()), secret}, {std::string(id()), secret}};
  }

  AbeUserKey
  keygen(const AbeMasterKey& master, const std::set<std::string>& attributes, Rng&) const final
  {
    checkAttributes(attributes);
    return {attributes, std::string(id()), master.blob};
  }

  EncryptedEnvelope
  encrypt(const AbePublicParams& params, const PolicyExpr& policy, ByteView payload,
          Rng& rng) const final
  {
    checkPayload(payload);
    AbeEnvelopeParams p;
    p.providerId = id();
    canonical(policy, p.policy);
    p.iv = rng.bytes(GCM_IV_SIZE);
    EncryptedEnvelope env;
    env.scheme = EnvelopeScheme::CpAbe;
    env.ciphertext = aesGcmSeal(key(params.blob, p.policy), p.iv, payload);
    env.params = p.encode();
    return env;
  }

  Bytes
  decrypt(const AbeUserKey& userKey, const EncryptedEnvelope& env) const final
  {
    AbeEnvelopeParams p;
    PolicyExpr policy;
    try {
      p = AbeEnvelopeParams::decode(env.params);
      policy = parsePolicy(p.policy);
    }
    catch (const std::exception&) {
      throw DecryptFailed();
    }
    if (!satisfies(userKey.attributes, policy))
      throw PolicyNotSatisfied();
    return aesGcmOpen(key(userKey.providerBlob, p.policy), p.iv, env.ciphertext);
  }

private:
  static AesKey
  key(ByteView secret, const std::string& policy)
  {
    return toAesKey(hmacSha256(secret, toBytes("sim-abe|" + policy)));
  }
};

// ---------------------------------------------------------------------------
// reference (BSW07)

using namespace typea;

Point
hashAttribute(const std::string& attribute)
{
  static std::mutex mutex;
  static std::map<std::string, Point> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(attribute);
    if (it != cache.end())
      return it->second;
  }
  Point pt = hashToG1(toBytes("attr|" + attribute));
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(attribute, pt);
  return pt;
}

void
appendElement(Bytes& out, ByteView value)
{
  tlv::appendTlv(out, tlv::AbeElement, value);
}

void
appendPointPair(Bytes& out, const Point& a, const Point& b)
{
  Bytes v = encodePoint(a);
  append(v, encodePoint(b));
  appendElement(out, v);
}

Point
readPoint(tlv::Reader& r)
{
  return decodePoint(r.expect(tlv::AbeElement).value);
}

std::pair<Point, Point>
readPointPair(tlv::Reader& r)
{
  auto v = r.expect(tlv::AbeElement).value;
  if (v.size() != 2 * G1_BYTES)
    throw std::invalid_argument("bad point pair");
  return {decodePoint(v.first(G1_BYTES)), decodePoint(v.subspan(G1_BYTES))};
}

mpz_class
modR(const mpz_class& x)
{
  mpz_class out;
  mpz_mod(out.get_mpz_t(), x.get_mpz_t(), params().r.get_mpz_t());
  return out;
}

mpz_class
invR(const mpz_class& x)
{
  mpz_class out;
  mpz_class m = modR(x);
  if (mpz_invert(out.get_mpz_t(), m.get_mpz_t(), params().r.get_mpz_t()) == 0)
    throw ProviderError("non-invertible scalar");
  return out;
}

/// Lagrange coefficient at 0 for index i over {1..n}.
mpz_class
lagrangeAtZero(long i, long n)
{
  mpz_class num = 1;
  mpz_class den = 1;
  for (long j = 1; j <= n; ++j) {
    if (j == i)
      continue;
    num *= -j;
    den *= (i - j);
  }
  return modR(modR(num) * invR(den));
}

size_t
leafCount(const PolicyExpr& node)
{
  if (node.isLeaf())
    return 1;
  size_t n = 0;
  for (const auto& c : node.children())
    n += leafCount(c);
  return n;
}

/// Split `secret` down the tree; AND gates use an n-of-n polynomial, OR
/// gates hand every child the same value.
void
shareSecret(const PolicyExpr& node, const mpz_class& secret, Rng& rng, std::vector<mpz_class>& out)
{
  if (node.isLeaf()) {
    out.push_back(secret);
    return;
  }
  const auto& children = node.children();
  if (node.kind() == PolicyExpr::Kind::Or) {
    for (const auto& c : children)
      shareSecret(c, secret, rng, out);
    return;
  }
  std::vector<mpz_class> coeffs{secret};
  for (size_t k = 1; k < children.size(); ++k)
    coeffs.push_back(randomZr(rng));
  for (size_t i = 0; i < children.size(); ++i) {
    mpz_class x = static_cast<unsigned long>(i + 1);
    mpz_class y = 0;
    for (size_t k = coeffs.size(); k-- > 0;)
      y = modR(y * x + coeffs[k]);
    shareSecret(children[i], y, rng, out);
  }
}

using Plan = std::vector<std::pair<size_t, mpz_class>>; // leaf index, coefficient

/// Cheapest satisfying set of leaves with their combined Lagrange coefficients.
std::optional<Plan>
planDecryption(const PolicyExpr& node, size_t firstLeaf, const std::set<std::string>& attrs)
{
  if (node.isLeaf()) {
    if (attrs.count(node.attribute()) == 0)
      return std::nullopt;
    return Plan{{firstLeaf, mpz_class(1)}};
  }
  const auto& children = node.children();
  std::vector<std::optional<Plan>> sub;
  size_t offset = firstLeaf;
  for (const auto& c : children) {
    sub.push_back(planDecryption(c, offset, attrs));
    offset += leafCount(c);
  }
  if (node.kind() == PolicyExpr::Kind::Or) {
    std::optional<Plan> best;
    for (auto& s : sub)
      if (s && (!best || s->size() < best->size()))
        best = std::move(s);
    return best;
  }
  Plan plan;
  long n = static_cast<long>(children.size());
  for (long i = 0; i < n; ++i) {
    if (!sub[i])
      return std::nullopt;
    mpz_class delta = lagrangeAtZero(i + 1, n);
    for (auto& [leaf, coef] : *sub[i])
      plan.emplace_back(leaf, modR(coef * delta));
  }
  return plan;
}

class ReferenceProvider final : public AbeProvider
{
public:
  std::string_view
  id() const noexcept final
  {
    return "reference";
  }

  AbeSetupResult
  setup(Rng& rng) const final
  {
    Point g = hashToG1(rng.bytes(32));
    mpz_class alpha = randomZr(rng);
    mpz_class beta = randomZr(rng);

    Bytes pub;
    appendElement(pub, encodePoint(g));
    appendElement(pub, encodePoint(mul(g, beta)));
    appendElement(pub, encodePoint(mul(g, invR(beta))));
    appendElement(pub, encodeGt(pow(pairing(g, g), alpha)));

    Bytes master;
    appendElement(master, encodePoint(g));
    appendElement(master, encodeZr(beta));
    appendElement(master, encodePoint(mul(g, alpha)));
    return {{std::string(id()), pub}, {std::string(id()), master}};
  }

  AbeUserKey
  keygen(const AbeMasterKey& master, const std::set<std::string>& attributes, Rng& rng) const final
  {
    checkAttributes(attributes);
    Point g, gAlpha;
    mpz_class beta;
    try {
      tlv::Reader r(master.blob);
      g = readPoint(r);
      beta = decodeZr(r.expect(tlv::AbeElement).value);
      gAlpha = readPoint(r);
      r.expectEnd();
    }
    catch (const std::exception& e) {
      throw ProviderError(std::string("malformed master key: ") + e.what());
    }

    mpz_class rr = randomZr(rng);
    Point gr = mul(g, rr);
    Bytes blob;
    appendElement(blob, encodePoint(mul(add(gAlpha, gr), invR(beta))));
    for (const auto& a : attributes) {
      mpz_class rj = randomZr(rng);
      tlv::appendTlv(blob, tlv::AbeAttribute, toBytes(a));
      appendPointPair(blob, add(gr, mul(hashAttribute(a), rj)), mul(g, rj));
    }
    return {attributes, std::string(id()), blob};
  }

  EncryptedEnvelope
  encrypt(const AbePublicParams& params, const PolicyExpr& policy, ByteView payload,
          Rng& rng) const final
  {
    checkPayload(payload);
    Point g, h;
    Fp2 eggAlpha;
    try {
      tlv::Reader r(params.blob);
      g = readPoint(r);
      h = readPoint(r);
      readPoint(r); // f, only needed for delegation
      eggAlpha = decodeGt(r.expect(tlv::AbeElement).value);
      r.expectEnd();
    }
    catch (const std::exception& e) {
      throw ProviderError(std::string("malformed public parameters: ") + e.what());
    }

    AbeEnvelopeParams p;
    p.providerId = id();
    PolicyExpr tree = canonical(policy, p.policy);

    mpz_class s = randomZr(rng);
    Fp2 m = pow(eggAlpha, randomZr(rng));

    Bytes header;
    appendElement(header, encodeGt(mul(m, pow(eggAlpha, s))));
    appendElement(header, encodePoint(mul(h, s)));
    std::vector<mpz_class> shares;
    shareSecret(tree, s, rng, shares);
    auto leaves = policyLeaves(tree);
    for (size_t i = 0; i < leaves.size(); ++i)
      appendPointPair(header, mul(g, shares[i]), mul(hashAttribute(leaves[i]), shares[i]));

    p.header = std::move(header);
    p.iv = rng.bytes(GCM_IV_SIZE);
    EncryptedEnvelope env;
    env.scheme = EnvelopeScheme::CpAbe;
    env.ciphertext = aesGcmSeal(toAesKey(sha256(encodeGt(m))), p.iv, payload);
    env.params = p.encode();
    return env;
  }

  Bytes
  decrypt(const AbeUserKey& userKey, const EncryptedEnvelope& env) const final
  {
    AbeEnvelopeParams p;
    PolicyExpr tree;
    Fp2 cTilde;
    Point c;
    std::vector<std::pair<Point, Point>> leafElems;
    try {
      p = AbeEnvelopeParams::decode(env.params);
      tree = parsePolicy(p.policy);
      tlv::Reader r(p.header);
      cTilde = decodeGt(r.expect(tlv::AbeElement).value);
      c = readPoint(r);
      while (!r.atEnd())
        leafElems.push_back(readPointPair(r));
    }
    catch (const std::exception&) {
      throw DecryptFailed();
    }
    if (leafElems.size() != leafCount(tree))
      throw DecryptFailed();

    auto plan = planDecryption(tree, 0, userKey.attributes);
    if (!plan)
      throw PolicyNotSatisfied();

    Point d;
    std::map<std::string, std::pair<Point, Point>> attrKeys;
    try {
      tlv::Reader r(userKey.providerBlob);
      d = readPoint(r);
      while (!r.atEnd()) {
        std::string a = toString(r.expect(tlv::AbeAttribute).value);
        attrKeys[a] = readPointPair(r);
      }
    }
    catch (const std::exception&) {
      throw DecryptFailed();
    }

    // M = C~ * prod e(D_j, C_y)^c / e(D'_j, C'_y)^c / e(C, D)
    auto leaves = policyLeaves(tree);
    std::vector<PairingTerm> terms;
    for (const auto& [leaf, coef] : *plan) {
      auto it = attrKeys.find(leaves[leaf]);
      if (it == attrKeys.end())
        throw DecryptFailed();
      const auto& [dj, djPrime] = it->second;
      terms.push_back({dj, leafElems[leaf].first, coef});
      terms.push_back({negate(djPrime), leafElems[leaf].second, coef});
    }
    terms.push_back({negate(c), d, 1});
    Fp2 m = mul(cTilde, pairingPowProduct(terms));
    return aesGcmOpen(toAesKey(sha256(encodeGt(m))), p.iv, env.ciphertext);
  }
};

} // namespace

Bytes
AbePublicParams::encode() const
{
  Bytes out;
  tlv::appendTlv(out, tlv::AbeProviderId, toBytes(providerId));
  tlv::appendTlv(out, tlv::AbeBlob, blob);
  return out;
}

AbePublicParams
AbePublicParams::decode(ByteView wire)
{
  tlv::Reader r(wire);
  AbePublicParams p;
  p.providerId = toString(r.expect(tlv::AbeProviderId).value);
  p.blob = viewBytes(r.expect(tlv::AbeBlob).value);
  r.expectEnd();
  return p;
}

Bytes
AbeUserKey::encode() const
{
  Bytes out;
  tlv::appendTlv(out, tlv::AbeProviderId, toBytes(providerId));
  for (const auto& a : attributes)
    tlv::appendTlv(out, tlv::AbeAttribute, toBytes(a));
  tlv::appendTlv(out, tlv::AbeBlob, providerBlob);
  return out;
}

AbeUserKey
AbeUserKey::decode(ByteView wire)
{
  tlv::Reader r(wire);
  AbeUserKey k;
  k.providerId = toString(r.expect(tlv::AbeProviderId).value);
  while (auto a = r.optional(tlv::AbeAttribute))
    k.attributes.insert(toString(a->value));
  k.providerBlob = viewBytes(r.expect(tlv::AbeBlob).value);
  r.expectEnd();
  return k;
}

const AbeProvider&
abeProvider(std::string_view id)
{
  static const ReferenceProvider reference;
  static const SimulatedProvider simulated;
  if (id == reference.id())
    return reference;
  if (id == simulated.id())
    return simulated;
  throw ProviderError("unknown ABE provider '" + std::string(id) + "'");
}

std::vector<std::string>
abeProviderIds()
{
  return {"reference", "simulated"};
}

PolicyExpr
abeEnvelopePolicy(const EncryptedEnvelope& env)
{
  return parsePolicy(AbeEnvelopeParams::decode(env.params).policy);
}

std::string
abeEnvelopeProvider(const EncryptedEnvelope& env)
{
  return AbeEnvelopeParams::decode(env.params).providerId;
}

Bytes
abeDecrypt(const AbeUserKey& key, const EncryptedEnvelope& env)
{
  if (env.scheme != EnvelopeScheme::CpAbe)
    throw DecryptFailed();
  std::string envProvider;
  try {
    envProvider = abeEnvelopeProvider(env);
  }
  catch (const std::exception&) {
    throw DecryptFailed();
  }
  if (envProvider != key.providerId)
    throw ProviderError("ABE key and ciphertext come from different providers");
  return abeProvider(key.providerId).decrypt(key, env);
}

} // namespace nac::crypto
