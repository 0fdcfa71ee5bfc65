#include "nac/wire/packet.hpp"

namespace nac {

namespace {

Bytes
encodeMetaInfo(const DataPacket& data)
{
  Bytes value;
  tlv::appendNonNegativeIntegerTlv(value, tlv::FreshnessPeriod, static_cast<uint64_t>(data.freshnessPeriod.count()));
  return tlv::makeTlv(tlv::MetaInfo, value);
}

Bytes
encodeSignatureInfo(const DataPacket& data)
{
  Bytes value;
  tlv::appendNonNegativeIntegerTlv(value, tlv::SignatureType, static_cast<uint64_t>(data.signatureType));
  tlv::appendTlv(value, tlv::KeyLocator, tlv::encodeName(data.keyLocator));
  return tlv::makeTlv(tlv::SignatureInfo, value);
}

Name
decodeName(tlv::Reader& r)
{
  return tlv::decodeNameValue(r.expect(tlv::Name).value);
}

InterestPacket
decodeInterestValue(ByteView value)
{
  tlv::Reader r(value);
  InterestPacket interest;
  interest.name = decodeName(r);
  if (auto e = r.optional(tlv::CanBePrefix)) {
    if (!e->value.empty())
      throw MalformedPacket("CanBePrefix must be empty");
    interest.canBePrefix = true;
  }
  if (auto e = r.optional(tlv::MustBeFresh)) {
    if (!e->value.empty())
      throw MalformedPacket("MustBeFresh must be empty");
    interest.mustBeFresh = true;
  }
  auto nonce = r.expect(tlv::Nonce).value;
  if (nonce.size() != 4)
    throw MalformedPacket("Nonce must be 4 bytes");
  interest.nonce = (uint32_t(nonce[0]) << 24) | (uint32_t(nonce[1]) << 16) | (uint32_t(nonce[2]) << 8) | nonce[3];
  uint64_t lifetime = tlv::readNonNegativeInteger(r.expect(tlv::InterestLifetime).value);
  interest.lifetime = Millis(static_cast<Millis::rep>(lifetime));
  r.expectEnd();
  return interest;
}

DataPacket
decodeDataValue(ByteView value)
{
  tlv::Reader r(value);
  DataPacket data;
  data.name = decodeName(r);

  tlv::Reader meta(r.expect(tlv::MetaInfo).value);
  uint64_t freshness = tlv::readNonNegativeInteger(meta.expect(tlv::FreshnessPeriod).value);
  meta.expectEnd();
  data.freshnessPeriod = Millis(static_cast<Millis::rep>(freshness));

  auto content = r.expect(tlv::Content).value;
  data.content.assign(content.begin(), content.end());

  tlv::Reader sigInfo(r.expect(tlv::SignatureInfo).value);
  data.signatureType = static_cast<SignatureType>(tlv::readNonNegativeInteger(sigInfo.expect(tlv::SignatureType).value));
  tlv::Reader locator(sigInfo.expect(tlv::KeyLocator).value);
  data.keyLocator = decodeName(locator);
  locator.expectEnd();
  sigInfo.expectEnd();

  auto sig = r.expect(tlv::SignatureValue).value;
  data.signatureValue.assign(sig.begin(), sig.end());
  r.expectEnd();
  return data;
}

} // namespace

Bytes
signedPortion(const DataPacket& data)
{
  Bytes out = tlv::encodeName(data.name);
  append(out, encodeMetaInfo(data));
  tlv::appendTlv(out, tlv::Content, data.content);
  append(out, encodeSignatureInfo(data));
  return out;
}

Bytes
encodeInterest(const InterestPacket& interest)
{
  Bytes value = tlv::encodeName(interest.name);
  if (interest.canBePrefix)
    tlv::appendTlv(value, tlv::CanBePrefix, {});
  if (interest.mustBeFresh)
    tlv::appendTlv(value, tlv::MustBeFresh, {});
  const uint8_t nonce[4] = {
    static_cast<uint8_t>(interest.nonce >> 24), static_cast<uint8_t>(interest.nonce >> 16),
    static_cast<uint8_t>(interest.nonce >> 8), static_cast<uint8_t>(interest.nonce),
  };
  tlv::appendTlv(value, tlv::Nonce, nonce);
  tlv::appendNonNegativeIntegerTlv(value, tlv::InterestLifetime, static_cast<uint64_t>(interest.lifetime.count()));
  return tlv::makeTlv(tlv::Interest, value);
}

Bytes
encodeData(const DataPacket& data)
{
  Bytes value = signedPortion(data);
  tlv::appendTlv(value, tlv::SignatureValue, data.signatureValue);
  return tlv::makeTlv(tlv::Data, value);
}

Bytes
encodePacket(const Packet& pkt)
{
  if (const auto* interest = std::get_if<InterestPacket>(&pkt))
    return encodeInterest(*interest);
  return encodeData(std::get<DataPacket>(pkt));
}

Packet
decodePacket(ByteView wire)
{
  tlv::Element outer = tlv::parseSingle(wire);
  switch (outer.type) {
    case tlv::Interest:
      return decodeInterestValue(outer.value);
    case tlv::Data:
      return decodeDataValue(outer.value);
    default:
      throw MalformedPacket("unknown packet type " + std::to_string(outer.type));
  }
}

} // namespace nac
