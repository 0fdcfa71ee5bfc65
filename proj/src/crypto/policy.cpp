#include "nac/crypto/policy.hpp"

#include <algorithm>
#include <cctype>

namespace nac::crypto {

namespace {

bool
iequals(std::string_view a, std::string_view b)
{
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [] (char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) == std::toupper(static_cast<unsigned char>(y));
         });
}

bool
isDelimiter(char c)
{
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')';
}

struct Token
{
  enum Type { Word, Open, Close, End } type;
  std::string_view text;
  size_t pos;
};

class Parser
{
public:
  explicit
  Parser(std::string_view text)
    : m_text(text)
  {
    advance();
  }

  PolicyExpr
  parse()
  {
    if (m_tok.type == Token::End)
      throw PolicySyntaxError("empty policy", 0);
    PolicyExpr e = expr();
    if (m_tok.type != Token::End)
      throw PolicySyntaxError("unexpected '" + std::string(m_tok.text) + "'", m_tok.pos);
    return e;
  }

private:
  bool
  isKeyword(const Token& t, std::string_view kw) const
  {
    return t.type == Token::Word && iequals(t.text, kw);
  }

  PolicyExpr
  expr()
  {
    std::vector<PolicyExpr> terms{term()};
    while (isKeyword(m_tok, "OR")) {
      advance();
      terms.push_back(term());
    }
    return terms.size() == 1 ? std::move(terms.front()) : PolicyExpr::anyOf(std::move(terms));
  }

  PolicyExpr
  term()
  {
    std::vector<PolicyExpr> factors{factor()};
    while (isKeyword(m_tok, "AND")) {
      advance();
      factors.push_back(factor());
    }
    return factors.size() == 1 ? std::move(factors.front()) : PolicyExpr::allOf(std::move(factors));
  }

  PolicyExpr
  factor()
  {
    Token t = m_tok;
    switch (t.type) {
      case Token::Open: {
        advance();
        PolicyExpr inner = expr();
        if (m_tok.type != Token::Close)
          throw PolicySyntaxError("expected ')'", m_tok.pos);
        advance();
        return inner;
      }
      case Token::Word:
        if (isKeyword(t, "AND") || isKeyword(t, "OR"))
          throw PolicySyntaxError("reserved word '" + std::string(t.text) + "' used as attribute", t.pos);
        if (!isValidAttributeName(t.text))
          throw PolicySyntaxError("invalid attribute '" + std::string(t.text) + "'", t.pos);
        advance();
        return PolicyExpr::attr(std::string(t.text));
      case Token::Close:
        throw PolicySyntaxError("unbalanced ')'", t.pos);
      case Token::End:
        break;
    }
    throw PolicySyntaxError("unexpected end of policy", t.pos);
  }

  void
  advance()
  {
    while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos])))
      ++m_pos;
    if (m_pos == m_text.size()) {
      m_tok = {Token::End, {}, m_pos};
      return;
    }
    char c = m_text[m_pos];
    if (c == '(' || c == ')') {
      m_tok = {c == '(' ? Token::Open : Token::Close, m_text.substr(m_pos, 1), m_pos};
      ++m_pos;
      return;
    }
    size_t start = m_pos;
    while (m_pos < m_text.size() && !isDelimiter(m_text[m_pos]))
      ++m_pos;
    m_tok = {Token::Word, m_text.substr(start, m_pos - start), start};
  }

private:
  std::string_view m_text;
  size_t m_pos = 0;
  Token m_tok{Token::End, {}, 0};
};

void
render(const PolicyExpr& p, std::string& out, bool nested)
{
  if (p.isLeaf()) {
    out += p.attribute();
    return;
  }
  const char* op = p.kind() == PolicyExpr::Kind::And ? " AND " : " OR ";
  if (nested)
    out.push_back('(');
  for (size_t i = 0; i < p.children().size(); ++i) {
    if (i > 0)
      out += op;
    render(p.children()[i], out, true);
  }
  if (nested)
    out.push_back(')');
}

void
collectLeaves(const PolicyExpr& p, std::vector<std::string>& out)
{
  if (p.isLeaf()) {
    out.push_back(p.attribute());
    return;
  }
  for (const auto& c : p.children())
    collectLeaves(c, out);
}

} // namespace

bool
isValidAttributeName(std::string_view name) noexcept
{
  if (name.empty() || iequals(name, "AND") || iequals(name, "OR"))
    return false;
  return std::none_of(name.begin(), name.end(), [] (char c) {
    return isDelimiter(c) || c == '/' || static_cast<unsigned char>(c) < 0x20;
  });
}

PolicyExpr
PolicyExpr::attr(std::string name)
{
  if (!isValidAttributeName(name))
    throw PolicySyntaxError("invalid attribute '" + name + "'", 0);
  PolicyExpr e;
  e.m_kind = Kind::Attr;
  e.m_attribute = std::move(name);
  return e;
}

PolicyExpr
PolicyExpr::allOf(std::vector<PolicyExpr> children)
{
  if (children.empty())
    throw PolicySyntaxError("gate without children", 0);
  if (children.size() == 1)
    return std::move(children.front());
  PolicyExpr e;
  e.m_kind = Kind::And;
  for (auto& c : children) {
    if (c.kind() == Kind::And)
      e.m_children.insert(e.m_children.end(), c.m_children.begin(), c.m_children.end());
    else
      e.m_children.push_back(std::move(c));
  }
  return e;
}

PolicyExpr
PolicyExpr::anyOf(std::vector<PolicyExpr> children)
{
  if (children.empty())
    throw PolicySyntaxError("gate without children", 0);
  if (children.size() == 1)
    return std::move(children.front());
  PolicyExpr e;
  e.m_kind = Kind::Or;
  for (auto& c : children) {
    if (c.kind() == Kind::Or)
      e.m_children.insert(e.m_children.end(), c.m_children.begin(), c.m_children.end());
    else
      e.m_children.push_back(std::move(c));
  }
  return e;
}

PolicyExpr
parsePolicy(std::string_view text)
{
  return Parser(text).parse();
}

std::string
renderPolicy(const PolicyExpr& policy)
{
  std::string out;
  render(policy, out, false);
  return out;
}

bool
satisfies(const std::set<std::string>& attributes, const PolicyExpr& policy)
{
  switch (policy.kind()) {
    case PolicyExpr::Kind::Attr:
      return attributes.count(policy.attribute()) > 0;
    case PolicyExpr::Kind::And:
      return std::all_of(policy.children().begin(), policy.children().end(),
                         [&] (const PolicyExpr& c) { return satisfies(attributes, c); });
    case PolicyExpr::Kind::Or:
      return std::any_of(policy.children().begin(), policy.children().end(),
                         [&] (const PolicyExpr& c) { return satisfies(attributes, c); });
  }
  return false;
}

std::vector<std::string>
policyLeaves(const PolicyExpr& policy)
{
  std::vector<std::string> out;
  collectLeaves(policy, out);
  return out;
}

PolicyExpr
mapLeaves(const PolicyExpr& policy, const std::function<std::string(const std::string&)>& rename)
{
  if (policy.isLeaf())
    return PolicyExpr::attr(rename(policy.attribute()));
  std::vector<PolicyExpr> children;
  children.reserve(policy.children().size());
  for (const auto& c : policy.children())
    children.push_back(mapLeaves(c, rename));
  return policy.kind() == PolicyExpr::Kind::And ? PolicyExpr::allOf(std::move(children))
                                                 : PolicyExpr::anyOf(std::move(children));
}

} // namespace nac::crypto
