#include "nac/crypto/rsa.hpp"
#include "nac/crypto/errors.hpp"
#include "nac/crypto/hash.hpp"
#include "nac/crypto/symmetric.hpp"

#include <openssl/bn.h>
#include <openssl/core_names.h>
#include <openssl/evp.h>
#include <openssl/param_build.h>
#include <openssl/rsa.h>
#include <openssl/x509.h>

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
using PkeyPtr = std::unique_ptr<EVP_PKEY, Deleter<EVP_PKEY, EVP_PKEY_free>>;
using PkeyCtxPtr = std::unique_ptr<EVP_PKEY_CTX, Deleter<EVP_PKEY_CTX, EVP_PKEY_CTX_free>>;
using ParamBldPtr = std::unique_ptr<OSSL_PARAM_BLD, Deleter<OSSL_PARAM_BLD, OSSL_PARAM_BLD_free>>;
using ParamPtr = std::unique_ptr<OSSL_PARAM, Deleter<OSSL_PARAM, OSSL_PARAM_free>>;

constexpr size_t HASH_LEN = 32;
constexpr unsigned long PUBLIC_EXPONENT = 65537;

BnPtr
newBn()
{
  BnPtr bn(BN_new());
  if (!bn)
    throw ProviderError("BN_new failed");
  return bn;
}

BnPtr
generatePrime(Rng& rng, int bits, const BIGNUM* e, BN_CTX* ctx)
{
  Bytes raw = rng.bytes(static_cast<size_t>(bits / 8));
  raw.front() |= 0xc0; // top two bits set so p*q has the full modulus length
  raw.back() |= 0x01;
  BnPtr p(BN_bin2bn(raw.data(), static_cast<int>(raw.size()), nullptr));
  BnPtr pm1 = newBn();
  BnPtr g = newBn();
  while (true) {
    if (BN_check_prime(p.get(), ctx, nullptr) == 1) {
      BN_sub(pm1.get(), p.get(), BN_value_one());
      BN_gcd(g.get(), pm1.get(), e, ctx);
      if (BN_is_one(g.get()))
        return p;
    }
    BN_add_word(p.get(), 2);
  }
}

PkeyPtr
loadPublic(const RsaPublicKey& key)
{
  const uint8_t* p = key.der.data();
  PkeyPtr pkey(d2i_PUBKEY(nullptr, &p, static_cast<long>(key.der.size())));
  if (!pkey || EVP_PKEY_get_base_id(pkey.get()) != EVP_PKEY_RSA)
    return nullptr;
  return pkey;
}

PkeyPtr
loadPrivate(const RsaPrivateKey& key)
{
  const uint8_t* p = key.der.data();
  PkeyPtr pkey(d2i_PrivateKey(EVP_PKEY_RSA, nullptr, &p, static_cast<long>(key.der.size())));
  return pkey;
}

Bytes
mgf1(ByteView seed, size_t length)
{
  Bytes out;
  out.reserve(length + HASH_LEN);
  for (uint32_t counter = 0; out.size() < length; ++counter) {
    Bytes block(seed.begin(), seed.end());
    for (int shift = 24; shift >= 0; shift -= 8)
      block.push_back(static_cast<uint8_t>(counter >> shift));
    auto d = sha256(block);
    out.insert(out.end(), d.begin(), d.end());
  }
  out.resize(length);
  return out;
}

// EME-OAEP encoding (RFC 8017 7.1.1) with SHA-256 and an empty label.
Bytes
oaepEncode(ByteView message, size_t k, Rng& rng)
{
  const auto lHash = sha256({});
  Bytes db(lHash.begin(), lHash.end());
  db.resize(k - message.size() - HASH_LEN - 2, 0x00);
  db.push_back(0x01);
  append(db, message);

  Bytes seed = rng.bytes(HASH_LEN);
  Bytes dbMask = mgf1(seed, db.size());
  for (size_t i = 0; i < db.size(); ++i)
    db[i] ^= dbMask[i];
  Bytes seedMask = mgf1(db, HASH_LEN);
  for (size_t i = 0; i < HASH_LEN; ++i)
    seed[i] ^= seedMask[i];

  Bytes em;
  em.reserve(k);
  em.push_back(0x00);
  append(em, seed);
  append(em, db);
  return em;
}

} // namespace

RsaKeyPair
generateRsaKeyPair(Rng& rng, int bits)
{
  BnCtxPtr ctx(BN_CTX_new());
  BnPtr e = newBn();
  BN_set_word(e.get(), PUBLIC_EXPONENT);

  BnPtr p = generatePrime(rng, bits / 2, e.get(), ctx.get());
  BnPtr q = generatePrime(rng, bits / 2, e.get(), ctx.get());
  while (BN_cmp(p.get(), q.get()) == 0)
    q = generatePrime(rng, bits / 2, e.get(), ctx.get());
  if (BN_cmp(p.get(), q.get()) < 0)
    std::swap(p, q);

  BnPtr n = newBn();
  BnPtr pm1 = newBn();
  BnPtr qm1 = newBn();
  BnPtr phi = newBn();
  BnPtr d = newBn();
  BnPtr dmp1 = newBn();
  BnPtr dmq1 = newBn();
  BnPtr iqmp = newBn();
  BN_mul(n.get(), p.get(), q.get(), ctx.get());
  BN_sub(pm1.get(), p.get(), BN_value_one());
  BN_sub(qm1.get(), q.get(), BN_value_one());
  BN_mul(phi.get(), pm1.get(), qm1.get(), ctx.get());
  if (BN_mod_inverse(d.get(), e.get(), phi.get(), ctx.get()) == nullptr ||
      BN_mod(dmp1.get(), d.get(), pm1.get(), ctx.get()) != 1 ||
      BN_mod(dmq1.get(), d.get(), qm1.get(), ctx.get()) != 1 ||
      BN_mod_inverse(iqmp.get(), q.get(), p.get(), ctx.get()) == nullptr)
    throw ProviderError("RSA key arithmetic failed");

  ParamBldPtr bld(OSSL_PARAM_BLD_new());
  if (!bld ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_N, n.get()) != 1 ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_E, e.get()) != 1 ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_D, d.get()) != 1 ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_FACTOR1, p.get()) != 1 ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_FACTOR2, q.get()) != 1 ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_EXPONENT1, dmp1.get()) != 1 ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_EXPONENT2, dmq1.get()) != 1 ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_COEFFICIENT1, iqmp.get()) != 1)
    throw ProviderError("OSSL_PARAM_BLD failed");
  ParamPtr params(OSSL_PARAM_BLD_to_param(bld.get()));
  PkeyCtxPtr pctx(EVP_PKEY_CTX_new_from_name(nullptr, "RSA", nullptr));
  EVP_PKEY* raw = nullptr;
  if (!params || !pctx || EVP_PKEY_fromdata_init(pctx.get()) != 1 ||
      EVP_PKEY_fromdata(pctx.get(), &raw, EVP_PKEY_KEYPAIR, params.get()) != 1)
    throw ProviderError("EVP_PKEY_fromdata failed");
  PkeyPtr pkey(raw);

  RsaKeyPair out;
  int pubLen = i2d_PUBKEY(pkey.get(), nullptr);
  int privLen = i2d_PrivateKey(pkey.get(), nullptr);
  if (pubLen <= 0 || privLen <= 0)
    throw ProviderError("RSA key serialization failed");
  out.publicKey.der.resize(static_cast<size_t>(pubLen));
  out.privateKey.der.resize(static_cast<size_t>(privLen));
  uint8_t* w = out.publicKey.der.data();
  i2d_PUBKEY(pkey.get(), &w);
  w = out.privateKey.der.data();
  i2d_PrivateKey(pkey.get(), &w);
  return out;
}

void
validateRsaPublicKey(const RsaPublicKey& key)
{
  if (!loadPublic(key))
    throw std::invalid_argument("not a DER RSA public key");
}

EncryptedEnvelope
wrapKey(const RsaPublicKey& key, ByteView payload, Rng& rng)
{
  PkeyPtr pkey = loadPublic(key);
  if (!pkey)
    throw std::invalid_argument("not a DER RSA public key");
  size_t k = static_cast<size_t>(EVP_PKEY_get_size(pkey.get()));
  if (payload.size() > k - 2 * HASH_LEN - 2)
    throw PayloadTooLarge("payload of " + std::to_string(payload.size()) +
                          " bytes exceeds RSA-OAEP capacity of " + std::to_string(k - 2 * HASH_LEN - 2));

  Bytes em = oaepEncode(payload, k, rng);
  PkeyCtxPtr ctx(EVP_PKEY_CTX_new(pkey.get(), nullptr));
  size_t outLen = k;
  EncryptedEnvelope env;
  env.scheme = EnvelopeScheme::RsaOaep;
  env.ciphertext.resize(k);
  if (!ctx || EVP_PKEY_encrypt_init(ctx.get()) != 1 ||
      EVP_PKEY_CTX_set_rsa_padding(ctx.get(), RSA_NO_PADDING) != 1 ||
      EVP_PKEY_encrypt(ctx.get(), env.ciphertext.data(), &outLen, em.data(), em.size()) != 1)
    throw ProviderError("RSA encryption failed");
  env.ciphertext.resize(outLen);
  return env;
}

Bytes
unwrapKey(const RsaPrivateKey& key, const EncryptedEnvelope& env)
{
  if (env.scheme != EnvelopeScheme::RsaOaep)
    throw DecryptFailed();
  PkeyPtr pkey = loadPrivate(key);
  if (!pkey)
    throw DecryptFailed();
  PkeyCtxPtr ctx(EVP_PKEY_CTX_new(pkey.get(), nullptr));
  size_t outLen = 0;
  if (!ctx || EVP_PKEY_decrypt_init(ctx.get()) != 1 ||
      EVP_PKEY_CTX_set_rsa_padding(ctx.get(), RSA_PKCS1_OAEP_PADDING) != 1 ||
      EVP_PKEY_CTX_set_rsa_oaep_md(ctx.get(), EVP_sha256()) != 1 ||
      EVP_PKEY_CTX_set_rsa_mgf1_md(ctx.get(), EVP_sha256()) != 1 ||
      EVP_PKEY_decrypt(ctx.get(), nullptr, &outLen, env.ciphertext.data(), env.ciphertext.size()) != 1)
    throw DecryptFailed();
  Bytes out(outLen);
  if (EVP_PKEY_decrypt(ctx.get(), out.data(), &outLen, env.ciphertext.data(), env.ciphertext.size()) != 1)
    throw DecryptFailed();
  out.resize(outLen);
  return out;
}

HybridCiphertext
hybridEncrypt(const RsaPublicKey& key, ByteView payload, Rng& rng)
{
  AesKey aes = randomAesKey(rng);
  HybridCiphertext ct;
  ct.wrappedKey = wrapKey(key, aes, rng);
  ct.body = encryptContent(aes, payload, rng);
  return ct;
}

Bytes
hybridDecrypt(const RsaPrivateKey& key, const HybridCiphertext& ct)
{
  Bytes raw = unwrapKey(key, ct.wrappedKey);
  if (raw.size() != AES_KEY_SIZE)
    throw DecryptFailed();
  AesKey aes{};
  std::copy(raw.begin(), raw.end(), aes.begin());
  return decryptContent(aes, ct.body);
}

} // namespace nac::crypto
