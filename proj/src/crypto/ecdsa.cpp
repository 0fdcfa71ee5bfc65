#include "nac/crypto/ecdsa.hpp"
#include "nac/crypto/errors.hpp"
#include "nac/crypto/hash.hpp"

#include <openssl/bn.h>
#include <openssl/core_names.h>
#include <openssl/ec.h>
#include <openssl/evp.h>
#include <openssl/obj_mac.h>
#include <openssl/param_build.h>

#include <memory>

namespace nac::crypto {

namespace {

template<typename T, void (*Free)(T*)>
struct Deleter
{
  void
  operator()(T* p) const
  {
    Free(p);
  }
};

using BnPtr = std::unique_ptr<BIGNUM, Deleter<BIGNUM, BN_free>>;
using BnCtxPtr = std::unique_ptr<BN_CTX, Deleter<BN_CTX, BN_CTX_free>>;
using GroupPtr = std::unique_ptr<EC_GROUP, Deleter<EC_GROUP, EC_GROUP_free>>;
using PointPtr = std::unique_ptr<EC_POINT, Deleter<EC_POINT, EC_POINT_free>>;
using SigPtr = std::unique_ptr<ECDSA_SIG, Deleter<ECDSA_SIG, ECDSA_SIG_free>>;
using PkeyPtr = std::unique_ptr<EVP_PKEY, Deleter<EVP_PKEY, EVP_PKEY_free>>;
using PkeyCtxPtr = std::unique_ptr<EVP_PKEY_CTX, Deleter<EVP_PKEY_CTX, EVP_PKEY_CTX_free>>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, Deleter<EVP_MD_CTX, EVP_MD_CTX_free>>;
using ParamBldPtr = std::unique_ptr<OSSL_PARAM_BLD, Deleter<OSSL_PARAM_BLD, OSSL_PARAM_BLD_free>>;
using ParamPtr = std::unique_ptr<OSSL_PARAM, Deleter<OSSL_PARAM, OSSL_PARAM_free>>;

constexpr size_t SCALAR_SIZE = 32;

BnPtr
newBn()
{
  BnPtr bn(BN_new());
  if (!bn)
    throw ProviderError("BN_new failed");
  return bn;
}

GroupPtr
p256()
{
  GroupPtr g(EC_GROUP_new_by_curve_name(NID_X9_62_prime256v1));
  if (!g)
    throw ProviderError("P-256 group unavailable");
  return g;
}

Bytes
bnToFixed(const BIGNUM* bn, size_t width)
{
  Bytes out(width);
  if (BN_bn2binpad(bn, out.data(), static_cast<int>(width)) < 0)
    throw ProviderError("BN_bn2binpad failed");
  return out;
}

Bytes
pointToOctets(const EC_GROUP* group, const EC_POINT* point, BN_CTX* ctx)
{
  Bytes out(65);
  if (EC_POINT_point2oct(group, point, POINT_CONVERSION_UNCOMPRESSED, out.data(), out.size(), ctx) != out.size())
    throw ProviderError("EC_POINT_point2oct failed");
  return out;
}

// Deterministic nonce per RFC 6979 section 3.2 with HMAC-SHA256; qlen == hlen == 256.
class NonceGenerator
{
public:
  NonceGenerator(ByteView x, ByteView h1, const BIGNUM* order)
    : m_order(order)
  {
    m_v.fill(0x01);
    m_k.fill(0x00);
    update(0x00, x, h1);
    update(0x01, x, h1);
  }

  BnPtr
  next()
  {
    while (true) {
      m_v = hmacSha256(m_k, m_v);
      BnPtr k(BN_bin2bn(m_v.data(), static_cast<int>(m_v.size()), nullptr));
      if (!BN_is_zero(k.get()) && BN_cmp(k.get(), m_order) < 0) {
        reseed();
        return k;
      }
      reseed();
    }
  }

private:
  void
  update(uint8_t sep, ByteView x, ByteView h1)
  {
    Bytes msg(m_v.begin(), m_v.end());
    msg.push_back(sep);
    append(msg, x);
    append(msg, h1);
    m_k = hmacSha256(m_k, msg);
    m_v = hmacSha256(m_k, m_v);
  }

  void
  reseed()
  {
    Bytes msg(m_v.begin(), m_v.end());
    msg.push_back(0x00);
    m_k = hmacSha256(m_k, msg);
    m_v = hmacSha256(m_k, m_v);
  }

private:
  const BIGNUM* m_order;
  Digest m_v{};
  Digest m_k{};
};

PkeyPtr
publicKeyFromOctets(ByteView publicKey)
{
  ParamBldPtr bld(OSSL_PARAM_BLD_new());
  if (!bld ||
      OSSL_PARAM_BLD_push_utf8_string(bld.get(), OSSL_PKEY_PARAM_GROUP_NAME, "prime256v1", 0) != 1 ||
      OSSL_PARAM_BLD_push_octet_string(bld.get(), OSSL_PKEY_PARAM_PUB_KEY, publicKey.data(), publicKey.size()) != 1)
    return nullptr;
  ParamPtr params(OSSL_PARAM_BLD_to_param(bld.get()));
  PkeyCtxPtr ctx(EVP_PKEY_CTX_new_from_name(nullptr, "EC", nullptr));
  if (!params || !ctx || EVP_PKEY_fromdata_init(ctx.get()) != 1)
    return nullptr;
  EVP_PKEY* raw = nullptr;
  if (EVP_PKEY_fromdata(ctx.get(), &raw, EVP_PKEY_PUBLIC_KEY, params.get()) != 1)
    return nullptr;
  return PkeyPtr(raw);
}

} // namespace

EcKeyPair
generateEcKeyPair(Rng& rng)
{
  auto group = p256();
  BnCtxPtr ctx(BN_CTX_new());
  const BIGNUM* order = EC_GROUP_get0_order(group.get());

  BnPtr d;
  while (true) {
    Bytes candidate = rng.bytes(SCALAR_SIZE);
    d.reset(BN_bin2bn(candidate.data(), static_cast<int>(candidate.size()), nullptr));
    if (!BN_is_zero(d.get()) && BN_cmp(d.get(), order) < 0)
      break;
  }

  PointPtr pub(EC_POINT_new(group.get()));
  if (!pub || EC_POINT_mul(group.get(), pub.get(), d.get(), nullptr, nullptr, ctx.get()) != 1)
    throw ProviderError("EC_POINT_mul failed");

  return EcKeyPair{pointToOctets(group.get(), pub.get(), ctx.get()), bnToFixed(d.get(), SCALAR_SIZE)};
}

Bytes
ecdsaSign(ByteView privateKey, ByteView message)
{
  if (privateKey.size() != SCALAR_SIZE)
    throw std::invalid_argument("P-256 private key must be 32 bytes");

  auto group = p256();
  BnCtxPtr ctx(BN_CTX_new());
  const BIGNUM* order = EC_GROUP_get0_order(group.get());

  BnPtr d(BN_bin2bn(privateKey.data(), static_cast<int>(privateKey.size()), nullptr));
  Digest h1 = sha256(message);
  BnPtr z(BN_bin2bn(h1.data(), static_cast<int>(h1.size()), nullptr));
  // bits2octets: reduce the digest once modulo q
  BnPtr zReduced = newBn();
  BN_nnmod(zReduced.get(), z.get(), order, ctx.get());
  Bytes h1Octets = bnToFixed(zReduced.get(), SCALAR_SIZE);

  NonceGenerator nonces(privateKey, h1Octets, order);
  PointPtr point(EC_POINT_new(group.get()));
  BnPtr x = newBn();
  BnPtr r = newBn();
  BnPtr s = newBn();
  BnPtr kinv = newBn();
  BnPtr tmp = newBn();

  while (true) {
    BnPtr k = nonces.next();
    if (EC_POINT_mul(group.get(), point.get(), k.get(), nullptr, nullptr, ctx.get()) != 1 ||
        EC_POINT_get_affine_coordinates(group.get(), point.get(), x.get(), nullptr, ctx.get()) != 1)
      throw ProviderError("EC_POINT_mul failed");
    BN_nnmod(r.get(), x.get(), order, ctx.get());
    if (BN_is_zero(r.get()))
      continue;
    // s = k^-1 (z + r d) mod q
    if (BN_mod_inverse(kinv.get(), k.get(), order, ctx.get()) == nullptr ||
        BN_mod_mul(tmp.get(), r.get(), d.get(), order, ctx.get()) != 1 ||
        BN_mod_add(tmp.get(), tmp.get(), z.get(), order, ctx.get()) != 1 ||
        BN_mod_mul(s.get(), kinv.get(), tmp.get(), order, ctx.get()) != 1)
      throw ProviderError("ECDSA arithmetic failed");
    if (!BN_is_zero(s.get()))
      break;
  }

  SigPtr sig(ECDSA_SIG_new());
  if (!sig || ECDSA_SIG_set0(sig.get(), r.release(), s.release()) != 1)
    throw ProviderError("ECDSA_SIG_set0 failed");
  int len = i2d_ECDSA_SIG(sig.get(), nullptr);
  if (len <= 0)
    throw ProviderError("i2d_ECDSA_SIG failed");
  Bytes der(static_cast<size_t>(len));
  uint8_t* p = der.data();
  i2d_ECDSA_SIG(sig.get(), &p);
  return der;
}

bool
ecdsaVerify(ByteView publicKey, ByteView message, ByteView signature) noexcept
{
  try {
    PkeyPtr pkey = publicKeyFromOctets(publicKey);
    if (!pkey)
      return false;
    MdCtxPtr md(EVP_MD_CTX_new());
    if (!md || EVP_DigestVerifyInit(md.get(), nullptr, EVP_sha256(), nullptr, pkey.get()) != 1)
      return false;
    return EVP_DigestVerify(md.get(), signature.data(), signature.size(), message.data(), message.size()) == 1;
  }
  catch (...) {
    return false;
  }
}

} // namespace nac::crypto
