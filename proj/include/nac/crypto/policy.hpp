#ifndef NAC_CRYPTO_POLICY_HPP
#define NAC_CRYPTO_POLICY_HPP

#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nac::crypto {

class PolicySyntaxError : public std::invalid_argument
{
public:
  PolicySyntaxError(const std::string& what, size_t position)
    : std::invalid_argument(what + " at position " + std::to_string(position))
    , m_position(position)
  {
  }

  size_t
  position() const noexcept
  {
    return m_position;
  }

private:
  size_t m_position;
};

/**
 * Boolean attribute policy: leaves are attribute names, inner nodes are
 * n-ary AND / OR gates. Nested gates of the same kind are flattened at
 * construction so every tree has one canonical shape.
 */
class PolicyExpr
{
public:
  enum class Kind { Attr, And, Or };

  static PolicyExpr
  attr(std::string name);

  static PolicyExpr
  allOf(std::vector<PolicyExpr> children);

  static PolicyExpr
  anyOf(std::vector<PolicyExpr> children);

  Kind
  kind() const noexcept
  {
    return m_kind;
  }

  bool
  isLeaf() const noexcept
  {
    return m_kind == Kind::Attr;
  }

  const std::string&
  attribute() const noexcept
  {
    return m_attribute;
  }

  const std::vector<PolicyExpr>&
  children() const noexcept
  {
    return m_children;
  }

  friend bool
  operator==(const PolicyExpr&, const PolicyExpr&) = default;

private:
  Kind m_kind = Kind::Attr;
  std::string m_attribute;
  std::vector<PolicyExpr> m_children;
};

/**
 * Grammar (AND binds tighter than OR; keywords case-insensitive):
 *
 *   expr   := term (OR term)*
 *   term   := factor (AND factor)*
 *   factor := ATTR | '(' expr ')'
 *
 * Attributes are runs of characters other than whitespace, parentheses and
 * '/'; the words AND and OR cannot be attributes.
 */
PolicyExpr
parsePolicy(std::string_view text);

/// Canonical text: uppercase operators, single spaces, parentheses only
/// around nested gates.
std::string
renderPolicy(const PolicyExpr& policy);

bool
satisfies(const std::set<std::string>& attributes, const PolicyExpr& policy);

/// Leaf attributes in left-to-right order (duplicates kept).
std::vector<std::string>
policyLeaves(const PolicyExpr& policy);

/// Copy of the policy with every leaf renamed by `rename`.
PolicyExpr
mapLeaves(const PolicyExpr& policy, const std::function<std::string(const std::string&)>& rename);

bool
isValidAttributeName(std::string_view name) noexcept;

} // namespace nac::crypto

#endif // NAC_CRYPTO_POLICY_HPP
