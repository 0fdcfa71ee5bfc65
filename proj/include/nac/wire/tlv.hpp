#ifndef NAC_WIRE_TLV_HPP
#define NAC_WIRE_TLV_HPP

#include "nac/common/bytes.hpp"
#include "nac/wire/name.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace nac::tlv {

// Packet-level types follow the NDN packet format numbering; see docs/wire.md.
enum : uint32_t {
  Interest = 5,
  Data = 6,
  Name = 7,
  GenericNameComponent = 8,
  Nonce = 10,
  InterestLifetime = 12,
  MustBeFresh = 18,
  MetaInfo = 20,
  Content = 21,
  SignatureInfo = 22,
  SignatureValue = 23,
  FreshnessPeriod = 25,
  SignatureType = 27,
  KeyLocator = 28,
  CanBePrefix = 33,
};

enum : uint64_t {
  SignatureSha256WithEcdsa = 3,
};

// Application payload types carried inside Content; see docs/payloads.md.
enum : uint32_t {
  Envelope = 130,
  EnvelopeScheme = 131,
  EnvelopeParams = 132,
  EnvelopeCiphertext = 133,
  InitializationVector = 134,
  EncryptedPayload = 135,
  EmbeddedCk = 136,
  NotifyEpoch = 137,
  AbeProviderId = 140,
  AbePolicy = 141,
  AbeHeader = 142,
  AbeAttribute = 143,
  AbeBlob = 144,
  AbeElement = 145,
};

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Shortest of the 1/3/5/9-byte VAR-NUMBER forms.
void
writeVarNumber(Bytes& out, uint64_t n);

size_t
varNumberSize(uint64_t n) noexcept;

/// Value bytes of a NonNegativeInteger (1, 2, 4 or 8 bytes, big-endian).
Bytes
encodeNonNegativeInteger(uint64_t n);

/// Throws Error unless value is 1, 2, 4 or 8 bytes long.
uint64_t
readNonNegativeInteger(ByteView value);

void
appendTlv(Bytes& out, uint32_t type, ByteView value);

inline void
appendNonNegativeIntegerTlv(Bytes& out, uint32_t type, uint64_t n)
{
  appendTlv(out, type, encodeNonNegativeInteger(n));
}

Bytes
makeTlv(uint32_t type, ByteView value);

/// Name TLV including its type and length.
Bytes
encodeName(const nac::Name& name);

/// Parse the value of a Name TLV.
nac::Name
decodeNameValue(ByteView value);

struct Element
{
  uint32_t type = 0;
  ByteView value;
  ByteView wire;
};

/**
 * Sequential reader over a run of TLV elements. Rejects non-minimal
 * VAR-NUMBER encodings and lengths that overrun the buffer.
 */
class Reader
{
public:
  explicit
  Reader(ByteView buf)
    : m_buf(buf)
  {
  }

  bool
  atEnd() const noexcept
  {
    return m_pos == m_buf.size();
  }

  std::optional<uint32_t>
  peekType() const;

  Element
  next();

  /// Next element, which must have the given type.
  Element
  expect(uint32_t type);

  /// Next element if it has the given type; otherwise nothing is consumed.
  std::optional<Element>
  optional(uint32_t type);

  void
  expectEnd() const;

private:
  uint64_t
  readVarNumber(size_t& pos) const;

private:
  ByteView m_buf;
  size_t m_pos = 0;
};

/// Parse exactly one element spanning the whole buffer.
Element
parseSingle(ByteView buf);

} // namespace nac::tlv

#endif // NAC_WIRE_TLV_HPP
