#include "nac/crypto/symmetric.hpp"
#include "nac/crypto/errors.hpp"

#include <openssl/evp.h>

#include <memory>

namespace nac::crypto {

namespace {

struct CtxDeleter
{
  void
  operator()(EVP_CIPHER_CTX* ctx) const
  {
    EVP_CIPHER_CTX_free(ctx);
  }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter>;

CipherCtx
newCtx()
{
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx)
    throw ProviderError("EVP_CIPHER_CTX_new failed");
  return ctx;
}

} // namespace

Component
randomKeyId(Rng& rng)
{
  return Component(toHex(rng.bytes(8)));
}

AesKey
randomAesKey(Rng& rng)
{
  AesKey k{};
  rng.fill(k);
  return k;
}

ContentKey
generateCk(Rng& rng)
{
  ContentKey ck;
  ck.ckId = randomKeyId(rng);
  rng.fill(ck.keyBytes);
  return ck;
}

Bytes
aesCbcEncrypt(const AesKey& key, ByteView iv, ByteView plaintext)
{
  if (iv.size() != AES_BLOCK_SIZE)
    throw std::invalid_argument("AES-CBC IV must be 16 bytes");
  auto ctx = newCtx();
  Bytes out(plaintext.size() + AES_BLOCK_SIZE);
  int len1 = 0;
  int len2 = 0;
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_cbc(), nullptr, key.data(), iv.data()) != 1 ||
      EVP_EncryptUpdate(ctx.get(), out.data(), &len1, plaintext.data(), static_cast<int>(plaintext.size())) != 1 ||
      EVP_EncryptFinal_ex(ctx.get(), out.data() + len1, &len2) != 1)
    throw ProviderError("AES-CBC encryption failed");
  out.resize(static_cast<size_t>(len1 + len2));
  return out;
}

Bytes
aesCbcDecrypt(const AesKey& key, ByteView iv, ByteView ciphertext)
{
  if (iv.size() != AES_BLOCK_SIZE || ciphertext.empty() || ciphertext.size() % AES_BLOCK_SIZE != 0)
    throw DecryptFailed();
  auto ctx = newCtx();
  Bytes out(ciphertext.size() + AES_BLOCK_SIZE);
  int len1 = 0;
  int len2 = 0;
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_cbc(), nullptr, key.data(), iv.data()) != 1 ||
      EVP_DecryptUpdate(ctx.get(), out.data(), &len1, ciphertext.data(), static_cast<int>(ciphertext.size())) != 1 ||
      EVP_DecryptFinal_ex(ctx.get(), out.data() + len1, &len2) != 1)
    throw DecryptFailed();
  out.resize(static_cast<size_t>(len1 + len2));
  return out;
}

Bytes
aesGcmSeal(const AesKey& key, ByteView iv, ByteView plaintext)
{
  if (iv.size() != GCM_IV_SIZE)
    throw std::invalid_argument("AES-GCM IV must be 12 bytes");
  auto ctx = newCtx();
  Bytes out(plaintext.size() + GCM_TAG_SIZE);
  int len1 = 0;
  int len2 = 0;
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), iv.data()) != 1 ||
      EVP_EncryptUpdate(ctx.get(), out.data(), &len1, plaintext.data(), static_cast<int>(plaintext.size())) != 1 ||
      EVP_EncryptFinal_ex(ctx.get(), out.data() + len1, &len2) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, GCM_TAG_SIZE, out.data() + len1 + len2) != 1)
    throw ProviderError("AES-GCM encryption failed");
  out.resize(static_cast<size_t>(len1 + len2) + GCM_TAG_SIZE);
  return out;
}

Bytes
aesGcmOpen(const AesKey& key, ByteView iv, ByteView sealed)
{
  if (iv.size() != GCM_IV_SIZE || sealed.size() < GCM_TAG_SIZE)
    throw DecryptFailed();
  size_t ctLen = sealed.size() - GCM_TAG_SIZE;
  Bytes tag(sealed.begin() + static_cast<ptrdiff_t>(ctLen), sealed.end());
  auto ctx = newCtx();
  Bytes out(ctLen + AES_BLOCK_SIZE);
  int len1 = 0;
  int len2 = 0;
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), iv.data()) != 1 ||
      EVP_DecryptUpdate(ctx.get(), out.data(), &len1, sealed.data(), static_cast<int>(ctLen)) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, GCM_TAG_SIZE, tag.data()) != 1 ||
      EVP_DecryptFinal_ex(ctx.get(), out.data() + len1, &len2) != 1)
    throw DecryptFailed();
  out.resize(static_cast<size_t>(len1 + len2));
  return out;
}

EncryptedEnvelope
encryptContent(const AesKey& key, ByteView plaintext, Rng& rng)
{
  EncryptedEnvelope env;
  env.scheme = EnvelopeScheme::AesCbc;
  env.params = rng.bytes(AES_BLOCK_SIZE);
  env.ciphertext = aesCbcEncrypt(key, env.params, plaintext);
  return env;
}

Bytes
decryptContent(const AesKey& key, const EncryptedEnvelope& env)
{
  if (env.scheme != EnvelopeScheme::AesCbc)
    throw DecryptFailed();
  return aesCbcDecrypt(key, env.params, env.ciphertext);
}

} // namespace nac::crypto
