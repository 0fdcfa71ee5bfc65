#include "nac/entities/crypto_engine.hpp"

namespace nac {

CryptoOpCounter&
CryptoOpCounter::operator+=(const CryptoOpCounter& o)
{
  keygenAsym += o.keygenAsym;
  rsaEncrypt += o.rsaEncrypt;
  rsaDecrypt += o.rsaDecrypt;
  aesEncrypt += o.aesEncrypt;
  aesDecrypt += o.aesDecrypt;
  abeSetup += o.abeSetup;
  abeKeygen += o.abeKeygen;
  abeEncrypt += o.abeEncrypt;
  abeDecrypt += o.abeDecrypt;
  sign += o.sign;
  verify += o.verify;
  return *this;
}

std::vector<std::pair<std::string, uint64_t>>
counterFields(const CryptoOpCounter& c)
{
  return {
    {"keygen_asym", c.keygenAsym}, {"rsa_encrypt", c.rsaEncrypt}, {"rsa_decrypt", c.rsaDecrypt},
    {"aes_encrypt", c.aesEncrypt}, {"aes_decrypt", c.aesDecrypt}, {"abe_setup", c.abeSetup},
    {"abe_keygen", c.abeKeygen},   {"abe_encrypt", c.abeEncrypt}, {"abe_decrypt", c.abeDecrypt},
    {"sign", c.sign},              {"verify", c.verify},
  };
}

crypto::RsaKeyPair
CryptoEngine::generateRsa()
{
  ++m_counter.keygenAsym;
  return crypto::generateRsaKeyPair(m_rng);
}

crypto::EncryptedEnvelope
CryptoEngine::wrap(const crypto::RsaPublicKey& key, ByteView payload)
{
  ++m_counter.rsaEncrypt;
  return crypto::wrapKey(key, payload, m_rng);
}

Bytes
CryptoEngine::unwrap(const crypto::RsaPrivateKey& key, const crypto::EncryptedEnvelope& env)
{
  ++m_counter.rsaDecrypt;
  return crypto::unwrapKey(key, env);
}

crypto::HybridCiphertext
CryptoEngine::hybridEncrypt(const crypto::RsaPublicKey& key, ByteView payload)
{
  ++m_counter.rsaEncrypt;
  ++m_counter.aesEncrypt;
  return crypto::hybridEncrypt(key, payload, m_rng);
}

Bytes
CryptoEngine::hybridDecrypt(const crypto::RsaPrivateKey& key, const crypto::HybridCiphertext& ct)
{
  ++m_counter.rsaDecrypt;
  ++m_counter.aesDecrypt;
  return crypto::hybridDecrypt(key, ct);
}

crypto::ContentKey
CryptoEngine::generateCk()
{
  return crypto::generateCk(m_rng);
}

crypto::EncryptedEnvelope
CryptoEngine::encryptContent(const crypto::ContentKey& ck, ByteView plaintext)
{
  ++m_counter.aesEncrypt;
  return crypto::encryptContent(ck, plaintext, m_rng);
}

Bytes
CryptoEngine::decryptContent(const crypto::ContentKey& ck, const crypto::EncryptedEnvelope& env)
{
  ++m_counter.aesDecrypt;
  return crypto::decryptContent(ck, env);
}

crypto::AbeSetupResult
CryptoEngine::abeSetup(std::string_view providerId)
{
  ++m_counter.abeSetup;
  return crypto::abeSetup(providerId, m_rng);
}

crypto::AbeUserKey
CryptoEngine::abeKeygen(const crypto::AbeMasterKey& master, const std::set<std::string>& attributes)
{
  ++m_counter.abeKeygen;
  return crypto::abeKeygen(master, attributes, m_rng);
}

crypto::EncryptedEnvelope
CryptoEngine::abeEncrypt(const crypto::AbePublicParams& params, const crypto::PolicyExpr& policy,
                         ByteView payload)
{
  ++m_counter.abeEncrypt;
  return crypto::abeEncrypt(params, policy, payload, m_rng);
}

Bytes
CryptoEngine::abeDecrypt(const crypto::AbeUserKey& key, const crypto::EncryptedEnvelope& env)
{
  ++m_counter.abeDecrypt;
  return crypto::abeDecrypt(key, env);
}

DataPacket
CryptoEngine::sign(Name name, Bytes content, Millis freshness, const IdentityKeyPair& signer)
{
  ++m_counter.sign;
  return signData(std::move(name), std::move(content), freshness, signer);
}

bool
CryptoEngine::verify(const TrustStore& trust, const DataPacket& data)
{
  ++m_counter.verify;
  return trust.verify(data);
}

} // namespace nac
