#ifndef NAC_CRYPTO_ERRORS_HPP
#define NAC_CRYPTO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nac::crypto {

/// Failure inside a crypto backend (OpenSSL call, ABE provider internals).
class ProviderError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Wrong key, bad padding, truncated or tampered ciphertext. Deliberately
/// carries no detail about which of these happened.
class DecryptFailed : public std::runtime_error
{
public:
  DecryptFailed()
    : std::runtime_error("decryption failed")
  {
  }
};

class PayloadTooLarge : public std::length_error
{
public:
  using std::length_error::length_error;
};

class PolicyNotSatisfied : public std::runtime_error
{
public:
  PolicyNotSatisfied()
    : std::runtime_error("attributes do not satisfy the ciphertext policy")
  {
  }
};

} // namespace nac::crypto

#endif // NAC_CRYPTO_ERRORS_HPP
