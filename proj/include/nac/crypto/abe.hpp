#ifndef NAC_CRYPTO_ABE_HPP
#define NAC_CRYPTO_ABE_HPP

#include "nac/crypto/envelope.hpp"
#include "nac/crypto/errors.hpp"
#include "nac/crypto/policy.hpp"
#include "nac/crypto/rng.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace nac::crypto {

/// Largest payload an ABE envelope carries; envelopes only hold content keys.
constexpr size_t ABE_MAX_PAYLOAD = 64;

struct AbePublicParams
{
  std::string providerId;
  Bytes blob;

  Bytes
  encode() const;

  static AbePublicParams
  decode(ByteView wire);

  friend bool
  operator==(const AbePublicParams&, const AbePublicParams&) = default;
};

struct AbeMasterKey
{
  std::string providerId;
  Bytes blob;
};

struct AbeUserKey
{
  std::set<std::string> attributes;
  std::string providerId;
  Bytes providerBlob;

  Bytes
  encode() const;

  static AbeUserKey
  decode(ByteView wire);

  friend bool
  operator==(const AbeUserKey&, const AbeUserKey&) = default;
};

struct AbeSetupResult
{
  AbePublicParams params;
  AbeMasterKey master;
};

/**
 * CP-ABE backend. Envelope params carry the provider id, the canonical
 * policy text, a provider-specific header and a GCM IV; the ciphertext is
 * the payload sealed under a key the header encapsulates.
 */
class AbeProvider
{
public:
  virtual
  ~AbeProvider() = default;

  virtual std::string_view
  id() const noexcept = 0;

  virtual AbeSetupResult
  setup(Rng& rng) const = 0;

  /// Throws std::invalid_argument for an empty or invalid attribute set.
  virtual AbeUserKey
  keygen(const AbeMasterKey& master, const std::set<std::string>& attributes, Rng& rng) const = 0;

  /// Throws PayloadTooLarge.
  virtual EncryptedEnvelope
  encrypt(const AbePublicParams& params, const PolicyExpr& policy, ByteView payload,
          Rng& rng) const = 0;

  /// Throws PolicyNotSatisfied or DecryptFailed.
  virtual Bytes
  decrypt(const AbeUserKey& key, const EncryptedEnvelope& env) const = 0;
};

/**
 * "reference": BSW07 ciphertext-policy ABE over the type-A pairing.
 * "simulated": insecure test backend; policy enforced by a satisfies()
 * check, payload keyed by HMAC(master secret, policy). Test use only.
 *
 * Throws ProviderError for unknown ids.
 */
const AbeProvider&
abeProvider(std::string_view id);

std::vector<std::string>
abeProviderIds();

/// Policy text stored in an ABE envelope. Throws tlv::Error or PolicySyntaxError.
PolicyExpr
abeEnvelopePolicy(const EncryptedEnvelope& env);

/// Provider id stored in an ABE envelope.
std::string
abeEnvelopeProvider(const EncryptedEnvelope& env);

// Dispatch on the provider id carried by the key material.

inline AbeSetupResult
abeSetup(std::string_view providerId, Rng& rng)
{
  return abeProvider(providerId).setup(rng);
}

inline AbeUserKey
abeKeygen(const AbeMasterKey& master, const std::set<std::string>& attributes, Rng& rng)
{
  return abeProvider(master.providerId).keygen(master, attributes, rng);
}

inline EncryptedEnvelope
abeEncrypt(const AbePublicParams& params, const PolicyExpr& policy, ByteView payload, Rng& rng)
{
  return abeProvider(params.providerId).encrypt(params, policy, payload, rng);
}

Bytes
abeDecrypt(const AbeUserKey& key, const EncryptedEnvelope& env);

} // namespace nac::crypto

#endif // NAC_CRYPTO_ABE_HPP
