#ifndef NAC_ENTITIES_CRYPTO_ENGINE_HPP
#define NAC_ENTITIES_CRYPTO_ENGINE_HPP

#include "nac/crypto/abe.hpp"
#include "nac/crypto/rsa.hpp"
#include "nac/crypto/symmetric.hpp"
#include "nac/entities/common.hpp"

namespace nac {

/// Per-entity tallies of cryptographic operations; counted when attempted.
struct CryptoOpCounter
{
  uint64_t keygenAsym = 0;
  uint64_t rsaEncrypt = 0;
  uint64_t rsaDecrypt = 0;
  uint64_t aesEncrypt = 0;
  uint64_t aesDecrypt = 0;
  uint64_t abeSetup = 0;
  uint64_t abeKeygen = 0;
  uint64_t abeEncrypt = 0;
  uint64_t abeDecrypt = 0;
  uint64_t sign = 0;
  uint64_t verify = 0;

  CryptoOpCounter&
  operator+=(const CryptoOpCounter& o);

  friend bool
  operator==(const CryptoOpCounter&, const CryptoOpCounter&) = default;
};

/// (field name, value) pairs in a fixed order, for reports.
std::vector<std::pair<std::string, uint64_t>>
counterFields(const CryptoOpCounter& c);

/**
 * An entity's randomness and crypto primitives, with every call tallied.
 */
class CryptoEngine
{
public:
  explicit
  CryptoEngine(crypto::Rng rng)
    : m_rng(std::move(rng))
  {
  }

  crypto::Rng&
  rng() noexcept
  {
    return m_rng;
  }

  const CryptoOpCounter&
  counter() const noexcept
  {
    return m_counter;
  }

  crypto::RsaKeyPair
  generateRsa();

  crypto::EncryptedEnvelope
  wrap(const crypto::RsaPublicKey& key, ByteView payload);

  Bytes
  unwrap(const crypto::RsaPrivateKey& key, const crypto::EncryptedEnvelope& env);

  crypto::HybridCiphertext
  hybridEncrypt(const crypto::RsaPublicKey& key, ByteView payload);

  Bytes
  hybridDecrypt(const crypto::RsaPrivateKey& key, const crypto::HybridCiphertext& ct);

  crypto::ContentKey
  generateCk();

  crypto::EncryptedEnvelope
  encryptContent(const crypto::ContentKey& ck, ByteView plaintext);

  Bytes
  decryptContent(const crypto::ContentKey& ck, const crypto::EncryptedEnvelope& env);

  crypto::AbeSetupResult
  abeSetup(std::string_view providerId);

  crypto::AbeUserKey
  abeKeygen(const crypto::AbeMasterKey& master, const std::set<std::string>& attributes);

  crypto::EncryptedEnvelope
  abeEncrypt(const crypto::AbePublicParams& params, const crypto::PolicyExpr& policy,
             ByteView payload);

  Bytes
  abeDecrypt(const crypto::AbeUserKey& key, const crypto::EncryptedEnvelope& env);

  DataPacket
  sign(Name name, Bytes content, Millis freshness, const IdentityKeyPair& signer);

  bool
  verify(const TrustStore& trust, const DataPacket& data);

private:
  crypto::Rng m_rng;
  CryptoOpCounter m_counter;
};

} // namespace nac

#endif // NAC_ENTITIES_CRYPTO_ENGINE_HPP
