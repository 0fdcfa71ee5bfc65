#ifndef NAC_WIRE_NAME_HPP
#define NAC_WIRE_NAME_HPP

#include "nac/common/bytes.hpp"

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nac {

/**
 * One name component. Equality is byte equality; URI form escapes every byte
 * outside printable ASCII plus '/' and '%'.
 */
class Component
{
public:
  class Error : public std::invalid_argument
  {
  public:
    using std::invalid_argument::invalid_argument;
  };

  Component() = default;

  explicit
  Component(Bytes value)
    : m_value(std::move(value))
  {
  }

  explicit
  Component(std::string_view text)
    : m_value(text.begin(), text.end())
  {
  }

  /// Parse one percent-escaped URI segment.
  static Component
  fromEscapedString(std::string_view escaped);

  const Bytes&
  value() const noexcept
  {
    return m_value;
  }

  size_t
  size() const noexcept
  {
    return m_value.size();
  }

  bool
  empty() const noexcept
  {
    return m_value.empty();
  }

  std::string
  toString() const
  {
    return nac::toString(m_value);
  }

  std::string
  toUri() const;

  friend bool
  operator==(const Component&, const Component&) = default;

  friend std::strong_ordering
  operator<=>(const Component& a, const Component& b)
  {
    return a.m_value <=> b.m_value;
  }

private:
  Bytes m_value;
};

/**
 * Hierarchical NDN name.
 */
class Name
{
public:
  class Error : public std::invalid_argument
  {
  public:
    using std::invalid_argument::invalid_argument;
  };

  using const_iterator = std::vector<Component>::const_iterator;

  Name() = default;

  /// Parse a URI such as "/military/air/aircraftA"; throws Name::Error.
  explicit
  Name(std::string_view uri);

  Name(const char* uri)
    : Name(std::string_view(uri))
  {
  }

  explicit
  Name(std::vector<Component> components)
    : m_components(std::move(components))
  {
  }

  size_t
  size() const noexcept
  {
    return m_components.size();
  }

  bool
  empty() const noexcept
  {
    return m_components.empty();
  }

  const Component&
  operator[](size_t i) const
  {
    return m_components[i];
  }

  const Component&
  at(size_t i) const
  {
    return m_components.at(i);
  }

  const_iterator
  begin() const noexcept
  {
    return m_components.begin();
  }

  const_iterator
  end() const noexcept
  {
    return m_components.end();
  }

  const std::vector<Component>&
  components() const noexcept
  {
    return m_components;
  }

  Name&
  append(Component c)
  {
    m_components.push_back(std::move(c));
    return *this;
  }

  Name&
  append(std::string_view text)
  {
    return append(Component(text));
  }

  Name&
  append(const char* text)
  {
    return append(Component(std::string_view(text)));
  }

  Name&
  append(const Name& suffix)
  {
    m_components.insert(m_components.end(), suffix.begin(), suffix.end());
    return *this;
  }

  /// First `n` components (clamped to size()).
  Name
  getPrefix(size_t n) const;

  /// Components [pos, pos + len), clamped.
  Name
  getSubName(size_t pos, size_t len = static_cast<size_t>(-1)) const;

  bool
  isPrefixOf(const Name& other) const noexcept;

  std::string
  toUri() const;

  friend bool
  operator==(const Name&, const Name&) = default;

  friend std::strong_ordering
  operator<=>(const Name& a, const Name& b)
  {
    return a.m_components <=> b.m_components;
  }

private:
  std::vector<Component> m_components;
};

inline Name
operator+(Name a, const Name& b)
{
  a.append(b);
  return a;
}

std::ostream&
operator<<(std::ostream& os, const Component& c);

std::ostream&
operator<<(std::ostream& os, const Name& n);

} // namespace nac

#endif // NAC_WIRE_NAME_HPP
