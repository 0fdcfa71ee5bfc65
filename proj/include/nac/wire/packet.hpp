#ifndef NAC_WIRE_PACKET_HPP
#define NAC_WIRE_PACKET_HPP

#include "nac/wire/name.hpp"
#include "nac/wire/tlv.hpp"

#include <chrono>
#include <variant>

namespace nac {

using Millis = std::chrono::milliseconds;

using MalformedPacket = tlv::Error;

constexpr Millis DEFAULT_INTEREST_LIFETIME{4000};
constexpr Millis KEY_FRESHNESS{3600 * 1000};
constexpr Millis CONTENT_FRESHNESS{10 * 1000};

struct InterestPacket
{
  Name name;
  bool canBePrefix = false;
  bool mustBeFresh = false;
  Millis lifetime = DEFAULT_INTEREST_LIFETIME;
  uint32_t nonce = 0;

  /// Whether `dataName` satisfies this Interest.
  bool
  matches(const Name& dataName) const
  {
    return canBePrefix ? name.isPrefixOf(dataName) : name == dataName;
  }

  friend bool
  operator==(const InterestPacket&, const InterestPacket&) = default;
};

enum class SignatureType : uint64_t {
  Sha256Ecdsa = tlv::SignatureSha256WithEcdsa,
};

struct DataPacket
{
  Name name;
  Millis freshnessPeriod{0};
  Bytes content;
  Name keyLocator;
  SignatureType signatureType = SignatureType::Sha256Ecdsa;
  Bytes signatureValue;

  friend bool
  operator==(const DataPacket&, const DataPacket&) = default;
};

using Packet = std::variant<InterestPacket, DataPacket>;

Bytes
encodeInterest(const InterestPacket& interest);

Bytes
encodeData(const DataPacket& data);

Bytes
encodePacket(const Packet& pkt);

/// Throws MalformedPacket on empty, truncated, or otherwise invalid input.
Packet
decodePacket(ByteView wire);

/// Name, MetaInfo, Content and SignatureInfo TLVs: the bytes covered by the signature.
Bytes
signedPortion(const DataPacket& data);

} // namespace nac

#endif // NAC_WIRE_PACKET_HPP
