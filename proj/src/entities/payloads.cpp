#include "nac/entities/payloads.hpp"
#include "nac/wire/tlv.hpp"

namespace nac {

namespace {

Bytes
copy(ByteView v)
{
  return Bytes(v.begin(), v.end());
}

} // namespace

Bytes
ContentPayload::encode() const
{
  Bytes out = tlv::encodeName(ckName);
  tlv::appendTlv(out, tlv::InitializationVector, iv);
  tlv::appendTlv(out, tlv::EncryptedPayload, ciphertext);
  if (embeddedCk) {
    Bytes inner = tlv::encodeName(embeddedCk->ckDataName);
    append(inner, embeddedCk->wrappedCk.encode());
    tlv::appendTlv(out, tlv::EmbeddedCk, inner);
  }
  return out;
}

ContentPayload
ContentPayload::decode(ByteView wire)
{
  tlv::Reader r(wire);
  ContentPayload p;
  p.ckName = tlv::decodeNameValue(r.expect(tlv::Name).value);
  p.iv = copy(r.expect(tlv::InitializationVector).value);
  p.ciphertext = copy(r.expect(tlv::EncryptedPayload).value);
  if (auto e = r.optional(tlv::EmbeddedCk)) {
    tlv::Reader inner(e->value);
    Embedded emb;
    emb.ckDataName = tlv::decodeNameValue(inner.expect(tlv::Name).value);
    emb.wrappedCk = crypto::EncryptedEnvelope::decode(inner.expect(tlv::Envelope).wire);
    inner.expectEnd();
    p.embeddedCk = std::move(emb);
  }
  r.expectEnd();
  return p;
}

Bytes
CkPayload::encode() const
{
  return wrappedCk.encode();
}

CkPayload
CkPayload::decode(ByteView wire)
{
  return {crypto::EncryptedEnvelope::decode(wire)};
}

Bytes
HybridPayload::encode() const
{
  Bytes out = ct.wrappedKey.encode();
  append(out, ct.body.encode());
  return out;
}

HybridPayload
HybridPayload::decode(ByteView wire)
{
  tlv::Reader r(wire);
  HybridPayload p;
  p.ct.wrappedKey = crypto::EncryptedEnvelope::decode(r.expect(tlv::Envelope).wire);
  p.ct.body = crypto::EncryptedEnvelope::decode(r.expect(tlv::Envelope).wire);
  r.expectEnd();
  return p;
}

Bytes
NotifyPayload::encode() const
{
  Bytes out;
  tlv::appendNonNegativeIntegerTlv(out, tlv::NotifyEpoch, epoch);
  append(out, tlv::encodeName(kekName));
  return out;
}

NotifyPayload
NotifyPayload::decode(ByteView wire)
{
  tlv::Reader r(wire);
  NotifyPayload p;
  p.epoch = tlv::readNonNegativeInteger(r.expect(tlv::NotifyEpoch).value);
  p.kekName = tlv::decodeNameValue(r.expect(tlv::Name).value);
  r.expectEnd();
  return p;
}

} // namespace nac
