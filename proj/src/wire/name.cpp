#include "nac/wire/name.hpp"

#include <algorithm>
#include <ostream>

namespace nac {

namespace {

bool
isUnescaped(uint8_t c)
{
  return c > 0x20 && c < 0x7f && c != '/' && c != '%';
}

int
hexDigit(char c)
{
  if (c >= '0' && c <= '9')
    return c - '0';
  if (c >= 'a' && c <= 'f')
    return c - 'a' + 10;
  if (c >= 'A' && c <= 'F')
    return c - 'A' + 10;
  return -1;
}

} // namespace

Component
Component::fromEscapedString(std::string_view escaped)
{
  Bytes value;
  value.reserve(escaped.size());
  for (size_t i = 0; i < escaped.size(); ++i) {
    char c = escaped[i];
    if (c == '/')
      throw Error("'/' inside component");
    if (c != '%') {
      value.push_back(static_cast<uint8_t>(c));
      continue;
    }
    if (i + 2 >= escaped.size())
      throw Error("truncated percent escape");
    int hi = hexDigit(escaped[i + 1]);
    int lo = hexDigit(escaped[i + 2]);
    if (hi < 0 || lo < 0)
      throw Error("invalid percent escape");
    value.push_back(static_cast<uint8_t>((hi << 4) | lo));
    i += 2;
  }

  // all-period components carry three extra periods in URI form
  if (std::all_of(value.begin(), value.end(), [] (uint8_t c) { return c == '.'; })) {
    if (value.size() < 3)
      throw Error("component of fewer than three periods");
    value.erase(value.begin(), value.begin() + 3);
  }
  return Component(std::move(value));
}

std::string
Component::toUri() const
{
  static constexpr char digits[] = "0123456789ABCDEF";
  std::string out;
  if (std::all_of(m_value.begin(), m_value.end(), [] (uint8_t c) { return c == '.'; }))
    out = "...";
  for (uint8_t c : m_value) {
    if (isUnescaped(c)) {
      out.push_back(static_cast<char>(c));
    }
    else {
      out.push_back('%');
      out.push_back(digits[c >> 4]);
      out.push_back(digits[c & 0x0f]);
    }
  }
  return out;
}

Name::Name(std::string_view uri)
{
  if (uri.starts_with('/'))
    uri.remove_prefix(1);
  if (uri.ends_with('/'))
    uri.remove_suffix(1);
  if (uri.empty())
    return;

  size_t start = 0;
  while (true) {
    size_t slash = uri.find('/', start);
    std::string_view segment = uri.substr(start, slash == std::string_view::npos ? uri.npos : slash - start);
    if (segment.empty())
      throw Error("empty segment in name URI");
    try {
      m_components.push_back(Component::fromEscapedString(segment));
    }
    catch (const Component::Error& e) {
      throw Error(std::string("bad component in name URI: ") + e.what());
    }
    if (slash == std::string_view::npos)
      break;
    start = slash + 1;
  }
}

Name
Name::getPrefix(size_t n) const
{
  n = std::min(n, size());
  return Name(std::vector<Component>(m_components.begin(), m_components.begin() + n));
}

Name
Name::getSubName(size_t pos, size_t len) const
{
  pos = std::min(pos, size());
  len = std::min(len, size() - pos);
  return Name(std::vector<Component>(m_components.begin() + pos, m_components.begin() + pos + len));
}

bool
Name::isPrefixOf(const Name& other) const noexcept
{
  if (size() > other.size())
    return false;
  return std::equal(begin(), end(), other.begin());
}

std::string
Name::toUri() const
{
  if (m_components.empty())
    return "/";
  std::string out;
  for (const auto& c : m_components) {
    out.push_back('/');
    out += c.toUri();
  }
  return out;
}

std::ostream&
operator<<(std::ostream& os, const Component& c)
{
  return os << c.toUri();
}

std::ostream&
operator<<(std::ostream& os, const Name& n)
{
  return os << n.toUri();
}

} // namespace nac
