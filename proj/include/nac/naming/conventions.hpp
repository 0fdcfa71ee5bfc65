#ifndef NAC_NAMING_CONVENTIONS_HPP
#define NAC_NAMING_CONVENTIONS_HPP

#include "nac/wire/name.hpp"

#include <optional>
#include <stdexcept>

namespace nac::naming {

namespace marker {
inline const Component NAC{std::string_view("NAC")};
inline const Component KEK{std::string_view("KEK")};
inline const Component KDK{std::string_view("KDK")};
inline const Component CK{std::string_view("CK")};
inline const Component ENCRYPTED_BY{std::string_view("ENCRYPTED-BY")};
inline const Component KEY{std::string_view("KEY")};
inline const Component ATTRIBUTE{std::string_view("ATTRIBUTE")};
inline const Component NOTIFY{std::string_view("NOTIFY")};
} // namespace marker

/// A prefix (granularity, producer, manager, decryptor, authority) is empty
/// where it must not be, or contains a reserved marker component.
class NameConventionViolation : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// A name does not have the shape of the requested convention.
class NotAConventionName : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

bool
isReservedMarker(const Component& c) noexcept;

/// Throws NameConventionViolation if `prefix` contains a marker, or is empty
/// and `allowEmpty` is false.
void
checkPrefix(const Name& prefix, std::string_view what, bool allowEmpty = false);

/// `<manager>/NAC/<granularity>/KEK/<key-id>`
struct KekName
{
  Name manager;
  Name granularity;
  Component keyId;

  Name
  toName() const;

  friend bool
  operator==(const KekName&, const KekName&) = default;
};

/// `<manager>/NAC/<granularity>/KDK/<key-id>`; key-id equals the paired KEK's.
struct KdkName
{
  Name manager;
  Name granularity;
  Component keyId;

  Name
  toName() const;

  friend bool
  operator==(const KdkName&, const KdkName&) = default;
};

/// `<kdk>/ENCRYPTED-BY/<decryptor>/KEY/<decryptor key-id>`
struct KdkDataName
{
  KdkName kdk;
  Name decryptor;
  Component decryptorKeyId;

  Name
  toName() const;

  friend bool
  operator==(const KdkDataName&, const KdkDataName&) = default;
};

/// `<producer>/CK/<ck-id>`
struct CkName
{
  Name producer;
  Component ckId;

  Name
  toName() const;

  friend bool
  operator==(const CkName&, const CkName&) = default;
};

/// `<ck>/ENCRYPTED-BY/<full KEK name>`
struct CkDataName
{
  CkName ck;
  KekName kek;

  Name
  toName() const;

  friend bool
  operator==(const CkDataName&, const CkDataName&) = default;
};

/// `<authority>/ATTRIBUTE/<attr>/ENCRYPTED-BY/<decryptor>/KEY/<key-id>`
struct AttributeInterestName
{
  Name authority;
  Component attribute;
  Name decryptor;
  Component decryptorKeyId;

  Name
  toName() const;

  friend bool
  operator==(const AttributeInterestName&, const AttributeInterestName&) = default;
};

KekName
makeKekName(const Name& manager, const Name& granularity, const Component& keyId);

/// `<manager>/NAC/<granularity>/KEK`, a proper prefix of every KEK name of
/// that granularity; used with CanBePrefix to discover the live key-id.
Name
kekInterestName(const Name& manager, const Name& granularity);

KdkName
kekToKdkName(const KekName& kek);

KekName
kdkToKekName(const KdkName& kdk);

KdkDataName
kekToKdkDataName(const KekName& kek, const Name& decryptor, const Component& decryptorKeyId);

CkName
makeCkName(const Name& producer, const Component& ckId);

CkDataName
makeCkDataName(const CkName& ck, const KekName& kek);

/// Throws NameConventionViolation when the attribute is not a valid policy
/// attribute (e.g. contains '/').
AttributeInterestName
makeAttributeInterestName(const Name& authority, std::string_view attribute,
                          const Name& decryptor, const Component& decryptorKeyId);

/// `<manager>/NAC/<granularity>/NOTIFY/<epoch>`
Name
makeNotifyName(const Name& manager, const Name& granularity, uint64_t epoch);

/// `<manager>/NAC/<granularity>/NOTIFY`
Name
notifyPrefix(const Name& manager, const Name& granularity);

// Parsers throw NotAConventionName.

KekName
parseKekName(const Name& name);

KdkName
parseKdkName(const Name& name);

KdkDataName
parseKdkDataName(const Name& name);

CkName
parseCkName(const Name& name);

CkDataName
parseCkDataName(const Name& name);

AttributeInterestName
parseAttributeInterestName(const Name& name);

enum class ConventionKind {
  Kek,
  Kdk,
  KdkData,
  Ck,
  CkData,
  AttributeInterest,
  Notify,
};

/// Which convention `name` follows, if any.
std::optional<ConventionKind>
classify(const Name& name);

} // namespace nac::naming

#endif // NAC_NAMING_CONVENTIONS_HPP
