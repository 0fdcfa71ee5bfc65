#include "nac/naming/conventions.hpp"
#include "nac/crypto/policy.hpp"

#include <charconv>

namespace nac::naming {

namespace {

const Component* const RESERVED[] = {
  &marker::NAC, &marker::KEK, &marker::KDK, &marker::CK,
  &marker::ENCRYPTED_BY, &marker::KEY, &marker::ATTRIBUTE, &marker::NOTIFY,
};

[[noreturn]] void
notConvention(const Name& name, std::string_view what)
{
  throw NotAConventionName(name.toUri() + " is not a " + std::string(what) + " name");
}

/// Index of the first reserved component at or after `from`, or size().
size_t
nextMarker(const Name& name, size_t from)
{
  for (size_t i = from; i < name.size(); ++i)
    if (isReservedMarker(name[i]))
      return i;
  return name.size();
}

void
checkKeyId(const Component& id, std::string_view what)
{
  if (id.empty())
    throw NameConventionViolation(std::string(what) + " must not be empty");
}

struct ManagerPart
{
  Name manager;
  Name granularity;
  size_t markerPos; // index of KEK / KDK / NOTIFY
};

// `<manager>/NAC/<granularity>/<marker>...`
ManagerPart
splitManagerPart(const Name& name, const Component& expected, std::string_view what)
{
  size_t nac = nextMarker(name, 0);
  if (nac == 0 || nac >= name.size() || name[nac] != marker::NAC)
    notConvention(name, what);
  size_t m = nextMarker(name, nac + 1);
  if (m == nac + 1 || m >= name.size() || name[m] != expected)
    notConvention(name, what);
  return {name.getPrefix(nac), name.getSubName(nac + 1, m - nac - 1), m};
}

Name
managerPart(const Name& manager, const Name& granularity, const Component& m)
{
  return Name(manager).append(marker::NAC).append(granularity).append(m);
}

} // namespace

bool
isReservedMarker(const Component& c) noexcept
{
  for (const Component* r : RESERVED)
    if (c == *r)
      return true;
  return false;
}

void
checkPrefix(const Name& prefix, std::string_view what, bool allowEmpty)
{
  if (prefix.empty() && !allowEmpty)
    throw NameConventionViolation(std::string(what) + " prefix must not be empty");
  for (const auto& c : prefix)
    if (isReservedMarker(c))
      throw NameConventionViolation(std::string(what) + " prefix " + prefix.toUri() +
                                    " contains reserved component " + c.toUri());
}

Name
KekName::toName() const
{
  return managerPart(manager, granularity, marker::KEK).append(keyId);
}

Name
KdkName::toName() const
{
  return managerPart(manager, granularity, marker::KDK).append(keyId);
}

Name
KdkDataName::toName() const
{
  return kdk.toName().append(marker::ENCRYPTED_BY).append(decryptor).append(marker::KEY)
    .append(decryptorKeyId);
}

Name
CkName::toName() const
{
  return Name(producer).append(marker::CK).append(ckId);
}

Name
CkDataName::toName() const
{
  return ck.toName().append(marker::ENCRYPTED_BY).append(kek.toName());
}

Name
AttributeInterestName::toName() const
{
  return Name(authority).append(marker::ATTRIBUTE).append(attribute)
    .append(marker::ENCRYPTED_BY).append(decryptor).append(marker::KEY).append(decryptorKeyId);
}

KekName
makeKekName(const Name& manager, const Name& granularity, const Component& keyId)
{
  checkPrefix(manager, "manager");
  checkPrefix(granularity, "granularity");
  checkKeyId(keyId, "KEK key-id");
  return {manager, granularity, keyId};
}

Name
kekInterestName(const Name& manager, const Name& granularity)
{
  checkPrefix(manager, "manager");
  checkPrefix(granularity, "granularity");
  return managerPart(manager, granularity, marker::KEK);
}

KdkName
kekToKdkName(const KekName& kek)
{
  return {kek.manager, kek.granularity, kek.keyId};
}

KekName
kdkToKekName(const KdkName& kdk)
{
  return {kdk.manager, kdk.granularity, kdk.keyId};
}

KdkDataName
kekToKdkDataName(const KekName& kek, const Name& decryptor, const Component& decryptorKeyId)
{
  makeKekName(kek.manager, kek.granularity, kek.keyId);
  checkPrefix(decryptor, "decryptor");
  checkKeyId(decryptorKeyId, "decryptor key-id");
  return {kekToKdkName(kek), decryptor, decryptorKeyId};
}

CkName
makeCkName(const Name& producer, const Component& ckId)
{
  checkPrefix(producer, "producer");
  checkKeyId(ckId, "CK id");
  return {producer, ckId};
}

CkDataName
makeCkDataName(const CkName& ck, const KekName& kek)
{
  makeCkName(ck.producer, ck.ckId);
  makeKekName(kek.manager, kek.granularity, kek.keyId);
  return {ck, kek};
}

AttributeInterestName
makeAttributeInterestName(const Name& authority, std::string_view attribute,
                          const Name& decryptor, const Component& decryptorKeyId)
{
  checkPrefix(authority, "authority");
  checkPrefix(decryptor, "decryptor");
  checkKeyId(decryptorKeyId, "decryptor key-id");
  if (!crypto::isValidAttributeName(attribute))
    throw NameConventionViolation("invalid attribute '" + std::string(attribute) + "'");
  Component attr(attribute);
  if (isReservedMarker(attr))
    throw NameConventionViolation("attribute must not be a reserved marker");
  return {authority, attr, decryptor, decryptorKeyId};
}

Name
notifyPrefix(const Name& manager, const Name& granularity)
{
  checkPrefix(manager, "manager");
  checkPrefix(granularity, "granularity");
  return managerPart(manager, granularity, marker::NOTIFY);
}

Name
makeNotifyName(const Name& manager, const Name& granularity, uint64_t epoch)
{
  return notifyPrefix(manager, granularity).append(std::to_string(epoch));
}

KekName
parseKekName(const Name& name)
{
  auto part = splitManagerPart(name, marker::KEK, "KEK");
  if (name.size() != part.markerPos + 2 || name[part.markerPos + 1].empty())
    notConvention(name, "KEK");
  return {part.manager, part.granularity, name[part.markerPos + 1]};
}

KdkName
parseKdkName(const Name& name)
{
  auto part = splitManagerPart(name, marker::KDK, "KDK");
  if (name.size() != part.markerPos + 2 || name[part.markerPos + 1].empty())
    notConvention(name, "KDK");
  return {part.manager, part.granularity, name[part.markerPos + 1]};
}

KdkDataName
parseKdkDataName(const Name& name)
{
  auto part = splitManagerPart(name, marker::KDK, "KDK Data");
  size_t kid = part.markerPos + 1;
  size_t enc = kid + 1;
  // <kid>/ENCRYPTED-BY/<decryptor...>/KEY/<decryptor kid>
  if (name.size() < enc + 4 || name[kid].empty() || name[enc] != marker::ENCRYPTED_BY)
    notConvention(name, "KDK Data");
  size_t key = nextMarker(name, enc + 1);
  if (key == enc + 1 || key != name.size() - 2 || name[key] != marker::KEY ||
      name[key + 1].empty())
    notConvention(name, "KDK Data");
  return {{part.manager, part.granularity, name[kid]},
          name.getSubName(enc + 1, key - enc - 1),
          name[key + 1]};
}

CkName
parseCkName(const Name& name)
{
  size_t ck = nextMarker(name, 0);
  if (ck == 0 || ck + 2 != name.size() || name[ck] != marker::CK || name[ck + 1].empty())
    notConvention(name, "CK");
  return {name.getPrefix(ck), name[ck + 1]};
}

CkDataName
parseCkDataName(const Name& name)
{
  size_t ck = nextMarker(name, 0);
  if (ck == 0 || ck + 3 >= name.size() || name[ck] != marker::CK || name[ck + 1].empty() ||
      name[ck + 2] != marker::ENCRYPTED_BY)
    notConvention(name, "CK Data");
  try {
    return {{name.getPrefix(ck), name[ck + 1]}, parseKekName(name.getSubName(ck + 3))};
  }
  catch (const NotAConventionName&) {
    notConvention(name, "CK Data");
  }
}

AttributeInterestName
parseAttributeInterestName(const Name& name)
{
  size_t at = nextMarker(name, 0);
  // <authority>/ATTRIBUTE/<attr>/ENCRYPTED-BY/<decryptor...>/KEY/<kid>
  if (at == 0 || name.size() < at + 6 || name[at] != marker::ATTRIBUTE ||
      name[at + 2] != marker::ENCRYPTED_BY ||
      !crypto::isValidAttributeName(name[at + 1].toString()) || isReservedMarker(name[at + 1]))
    notConvention(name, "attribute Interest");
  size_t enc = at + 2;
  size_t key = nextMarker(name, enc + 1);
  if (key == enc + 1 || key != name.size() - 2 || name[key] != marker::KEY ||
      name[key + 1].empty())
    notConvention(name, "attribute Interest");
  return {name.getPrefix(at), name[at + 1], name.getSubName(enc + 1, key - enc - 1),
          name[key + 1]};
}

std::optional<ConventionKind>
classify(const Name& name)
{
  auto tryParse = [&](auto parser) {
    try {
      parser(name);
      return true;
    }
    catch (const NotAConventionName&) {
      return false;
    }
  };
  if (tryParse(parseKekName))
    return ConventionKind::Kek;
  if (tryParse(parseKdkName))
    return ConventionKind::Kdk;
  if (tryParse(parseKdkDataName))
    return ConventionKind::KdkData;
  if (tryParse(parseCkName))
    return ConventionKind::Ck;
  if (tryParse(parseCkDataName))
    return ConventionKind::CkData;
  if (tryParse(parseAttributeInterestName))
    return ConventionKind::AttributeInterest;
  try {
    auto part = splitManagerPart(name, marker::NOTIFY, "NOTIFY");
    if (name.size() == part.markerPos + 2) {
      const auto s = name[part.markerPos + 1].toString();
      uint64_t epoch = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), epoch);
      if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty())
        return ConventionKind::Notify;
    }
  }
  catch (const NotAConventionName&) {
  }
  return std::nullopt;
}

} // namespace nac::naming
