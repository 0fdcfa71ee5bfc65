#ifndef NAC_ABE_ABE_ENCRYPTOR_HPP
#define NAC_ABE_ABE_ENCRYPTOR_HPP

#include "nac/entities/encryptor.hpp"

namespace nac {

/// NAC-ABE encryptor: the KEK carries ABE public parameters and its key-id
/// the policy; CKs are wrapped with abe_encrypt under that policy.
class AbeEncryptor : public EncryptorBase
{
public:
  using EncryptorBase::EncryptorBase;

  const std::optional<crypto::PolicyExpr>&
  policy() const noexcept
  {
    return m_policy;
  }

protected:
  void
  installKek(const naming::KekName& name, const DataPacket& data) override;

  crypto::EncryptedEnvelope
  wrapCk(const crypto::ContentKey& ck) override;

private:
  crypto::AbePublicParams m_params;
  std::optional<crypto::PolicyExpr> m_policy;
};

} // namespace nac

#endif // NAC_ABE_ABE_ENCRYPTOR_HPP
