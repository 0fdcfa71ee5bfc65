#include "nac/crypto/rng.hpp"
#include "nac/crypto/errors.hpp"
#include "nac/crypto/hash.hpp"

#include <openssl/evp.h>

#include <array>

namespace nac::crypto {

struct Rng::Impl
{
  Digest key{};
  EVP_CIPHER_CTX* ctx = nullptr;

  explicit
  Impl(const Digest& k)
    : key(k)
  {
    ctx = EVP_CIPHER_CTX_new();
    std::array<uint8_t, 16> iv{};
    if (ctx == nullptr ||
        EVP_EncryptInit_ex(ctx, EVP_aes_256_ctr(), nullptr, key.data(), iv.data()) != 1)
      throw ProviderError("cannot initialize AES-CTR generator");
  }

  ~Impl()
  {
    EVP_CIPHER_CTX_free(ctx);
  }
};

static Bytes
seedBytes(uint64_t seed)
{
  Bytes b = toBytes("nac-rng-seed:");
  for (int shift = 56; shift >= 0; shift -= 8)
    b.push_back(static_cast<uint8_t>(seed >> shift));
  return b;
}

Rng::Rng(uint64_t seed)
  : Rng(ByteView(seedBytes(seed)))
{
}

Rng::Rng(ByteView seedMaterial)
  : m_impl(std::make_unique<Impl>(sha256(seedMaterial)))
{
}

Rng::Rng(Rng&&) noexcept = default;
Rng& Rng::operator=(Rng&&) noexcept = default;
Rng::~Rng() = default;

void
Rng::fill(std::span<uint8_t> out)
{
  static const std::array<uint8_t, 256> zeros{};
  size_t done = 0;
  while (done < out.size()) {
    int chunk = static_cast<int>(std::min<size_t>(zeros.size(), out.size() - done));
    int written = 0;
    if (EVP_EncryptUpdate(m_impl->ctx, out.data() + done, &written, zeros.data(), chunk) != 1 ||
        written != chunk)
      throw ProviderError("AES-CTR keystream failure");
    done += static_cast<size_t>(chunk);
  }
}

Bytes
Rng::bytes(size_t n)
{
  Bytes out(n);
  fill(out);
  return out;
}

uint32_t
Rng::nextU32()
{
  std::array<uint8_t, 4> b{};
  fill(b);
  return (uint32_t(b[0]) << 24) | (uint32_t(b[1]) << 16) | (uint32_t(b[2]) << 8) | b[3];
}

uint64_t
Rng::nextU64()
{
  return (uint64_t(nextU32()) << 32) | nextU32();
}

Rng
Rng::derive(std::string_view label) const
{
  Bytes material(m_impl->key.begin(), m_impl->key.end());
  append(material, toBytes("/derive/"));
  append(material, toBytes(label));
  return Rng(ByteView(material));
}

} // namespace nac::crypto
