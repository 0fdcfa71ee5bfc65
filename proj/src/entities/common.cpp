#include "nac/entities/common.hpp"

namespace nac {

std::string_view
toString(ErrorCode code)
{
  switch (code) {
    case ErrorCode::NotAuthorized:
      return "NotAuthorized";
    case ErrorCode::FetchTimeout:
      return "FetchTimeout";
    case ErrorCode::SignatureInvalid:
      return "SignatureInvalid";
    case ErrorCode::DecryptFailed:
      return "DecryptFailed";
    case ErrorCode::KekUnavailable:
      return "KekUnavailable";
    case ErrorCode::PolicySyntaxError:
      return "PolicySyntaxError";
  }
  return "?";
}

bool
TrustStore::verify(const DataPacket& data) const noexcept
{
  try {
    auto it = m_keys.find(data.keyLocator);
    if (it == m_keys.end())
      return false;
    auto identity = identityOfKeyName(data.keyLocator);
    if (!identity || !identity->isPrefixOf(data.name))
      return false;
    return verifyData(data, it->second);
  }
  catch (...) {
    return false;
  }
}

} // namespace nac
