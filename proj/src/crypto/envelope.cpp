#include "nac/crypto/envelope.hpp"
#include "nac/wire/tlv.hpp"

namespace nac::crypto {

Bytes
EncryptedEnvelope::encode() const
{
  Bytes value;
  tlv::appendNonNegativeIntegerTlv(value, tlv::EnvelopeScheme, static_cast<uint64_t>(scheme));
  tlv::appendTlv(value, tlv::EnvelopeParams, params);
  tlv::appendTlv(value, tlv::EnvelopeCiphertext, ciphertext);
  return tlv::makeTlv(tlv::Envelope, value);
}

EncryptedEnvelope
EncryptedEnvelope::decode(ByteView wire)
{
  auto outer = tlv::parseSingle(wire);
  if (outer.type != tlv::Envelope)
    throw tlv::Error("not an envelope");
  tlv::Reader r(outer.value);
  EncryptedEnvelope env;
  uint64_t scheme = tlv::readNonNegativeInteger(r.expect(tlv::EnvelopeScheme).value);
  if (scheme < 1 || scheme > 3)
    throw tlv::Error("unknown envelope scheme");
  env.scheme = static_cast<EnvelopeScheme>(scheme);
  auto params = r.expect(tlv::EnvelopeParams).value;
  env.params.assign(params.begin(), params.end());
  auto ct = r.expect(tlv::EnvelopeCiphertext).value;
  env.ciphertext.assign(ct.begin(), ct.end());
  r.expectEnd();
  return env;
}

} // namespace nac::crypto
