#include "nac/wire/tlv.hpp"

#include <limits>

namespace nac::tlv {

void
writeVarNumber(Bytes& out, uint64_t n)
{
  if (n < 253) {
    out.push_back(static_cast<uint8_t>(n));
  }
  else if (n <= 0xffff) {
    out.push_back(253);
    out.push_back(static_cast<uint8_t>(n >> 8));
    out.push_back(static_cast<uint8_t>(n));
  }
  else if (n <= 0xffffffff) {
    out.push_back(254);
    for (int shift = 24; shift >= 0; shift -= 8)
      out.push_back(static_cast<uint8_t>(n >> shift));
  }
  else {
    out.push_back(255);
    for (int shift = 56; shift >= 0; shift -= 8)
      out.push_back(static_cast<uint8_t>(n >> shift));
  }
}

size_t
varNumberSize(uint64_t n) noexcept
{
  if (n < 253)
    return 1;
  if (n <= 0xffff)
    return 3;
  if (n <= 0xffffffff)
    return 5;
  return 9;
}

Bytes
encodeNonNegativeInteger(uint64_t n)
{
  size_t width = n <= 0xff ? 1 : n <= 0xffff ? 2 : n <= 0xffffffff ? 4 : 8;
  Bytes out(width);
  for (size_t i = 0; i < width; ++i)
    out[width - 1 - i] = static_cast<uint8_t>(n >> (8 * i));
  return out;
}

uint64_t
readNonNegativeInteger(ByteView value)
{
  switch (value.size()) {
    case 1: case 2: case 4: case 8:
      break;
    default:
      throw Error("NonNegativeInteger has invalid length");
  }
  uint64_t n = 0;
  for (uint8_t b : value)
    n = (n << 8) | b;
  return n;
}

void
appendTlv(Bytes& out, uint32_t type, ByteView value)
{
  writeVarNumber(out, type);
  writeVarNumber(out, value.size());
  append(out, value);
}

Bytes
makeTlv(uint32_t type, ByteView value)
{
  Bytes out;
  out.reserve(value.size() + 10);
  appendTlv(out, type, value);
  return out;
}

Bytes
encodeName(const nac::Name& name)
{
  Bytes value;
  for (const auto& c : name)
    appendTlv(value, GenericNameComponent, c.value());
  return makeTlv(Name, value);
}

nac::Name
decodeNameValue(ByteView value)
{
  Reader r(value);
  std::vector<Component> comps;
  while (!r.atEnd()) {
    Element e = r.expect(GenericNameComponent);
    comps.emplace_back(Bytes(e.value.begin(), e.value.end()));
  }
  return nac::Name(std::move(comps));
}

uint64_t
Reader::readVarNumber(size_t& pos) const
{
  if (pos >= m_buf.size())
    throw Error("truncated VAR-NUMBER");
  uint8_t first = m_buf[pos++];
  size_t width = first < 253 ? 0 : first == 253 ? 2 : first == 254 ? 4 : 8;
  if (width == 0)
    return first;
  if (m_buf.size() - pos < width)
    throw Error("truncated VAR-NUMBER");
  uint64_t n = 0;
  for (size_t i = 0; i < width; ++i)
    n = (n << 8) | m_buf[pos++];
  if (varNumberSize(n) != width + 1)
    throw Error("non-minimal VAR-NUMBER");
  return n;
}

std::optional<uint32_t>
Reader::peekType() const
{
  if (atEnd())
    return std::nullopt;
  size_t pos = m_pos;
  uint64_t type = readVarNumber(pos);
  if (type > std::numeric_limits<uint32_t>::max())
    throw Error("TLV type out of range");
  return static_cast<uint32_t>(type);
}

Element
Reader::next()
{
  size_t pos = m_pos;
  uint64_t type = readVarNumber(pos);
  if (type == 0 || type > std::numeric_limits<uint32_t>::max())
    throw Error("TLV type out of range");
  uint64_t length = readVarNumber(pos);
  if (length > m_buf.size() - pos)
    throw Error("TLV length exceeds buffer");
  Element e;
  e.type = static_cast<uint32_t>(type);
  e.value = m_buf.subspan(pos, length);
  e.wire = m_buf.subspan(m_pos, pos + length - m_pos);
  m_pos = pos + length;
  return e;
}

Element
Reader::expect(uint32_t type)
{
  if (atEnd())
    throw Error("missing TLV element " + std::to_string(type));
  Element e = next();
  if (e.type != type)
    throw Error("expected TLV type " + std::to_string(type) + ", got " + std::to_string(e.type));
  return e;
}

std::optional<Element>
Reader::optional(uint32_t type)
{
  if (peekType() != type)
    return std::nullopt;
  return next();
}

void
Reader::expectEnd() const
{
  if (!atEnd())
    throw Error("unexpected trailing TLV bytes");
}

Element
parseSingle(ByteView buf)
{
  Reader r(buf);
  if (r.atEnd())
    throw Error("empty buffer");
  Element e = r.next();
  r.expectEnd();
  return e;
}

} // namespace nac::tlv
