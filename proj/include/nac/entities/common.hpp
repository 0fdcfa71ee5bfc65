#ifndef NAC_ENTITIES_COMMON_HPP
#define NAC_ENTITIES_COMMON_HPP

#include "nac/wire/signing.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace nac {

/// Failure reported by an asynchronous entity operation.
enum class ErrorCode {
  NotAuthorized,
  FetchTimeout,
  SignatureInvalid,
  DecryptFailed,
  KekUnavailable,
  PolicySyntaxError,
};

std::string_view
toString(ErrorCode code);

struct Error
{
  ErrorCode code;
  std::string detail;
};

/// Value-or-error result handed to completion callbacks.
template<typename T>
struct Outcome
{
  std::optional<T> value;
  std::optional<Error> error;

  static Outcome
  success(T v)
  {
    return {std::move(v), std::nullopt};
  }

  static Outcome
  failure(ErrorCode code, std::string detail = {})
  {
    return {std::nullopt, Error{code, std::move(detail)}};
  }

  bool
  ok() const noexcept
  {
    return value.has_value();
  }
};

class DuplicateGranularity : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

class UnknownGranularity : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

class InvalidState : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/**
 * Pre-provisioned signing keys of the entities in a deployment. A Data
 * packet is trusted when its key locator names a known key, the key's
 * identity is a prefix of the Data name, and the signature verifies.
 */
class TrustStore
{
public:
  void
  add(const IdentityKeyPair& identity)
  {
    m_keys[identity.keyName()] = identity.publicKey;
  }

  void
  add(const Name& keyName, Bytes publicKey)
  {
    m_keys[keyName] = std::move(publicKey);
  }

  bool
  contains(const Name& keyName) const
  {
    return m_keys.count(keyName) > 0;
  }

  size_t
  size() const noexcept
  {
    return m_keys.size();
  }

  bool
  verify(const DataPacket& data) const noexcept;

private:
  std::map<Name, Bytes> m_keys;
};

} // namespace nac

#endif // NAC_ENTITIES_COMMON_HPP
