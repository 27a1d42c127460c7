#include "erank/term.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace erank {

namespace {

Term::Kind checked_kind(const std::shared_ptr<const detail::TermNode>& node) {
  if (!node)
    throw std::logic_error("use of an empty Term");
  return node->kind;
}

void collect_names(const Term& t, Term::Kind kind, std::vector<std::string>& out) {
  switch (t.kind()) {
  case Term::Kind::variable:
  case Term::Kind::constant:
    if (t.kind() == kind && std::find(out.begin(), out.end(), t.name()) == out.end())
      out.push_back(t.name());
    return;
  case Term::Kind::literal:
    return;
  case Term::Kind::power:
    collect_names(t.base(), kind, out);
    return;
  default:
    collect_names(t.lhs(), kind, out);
    collect_names(t.rhs(), kind, out);
  }
}

} // namespace

Term Term::var(std::string name) {
  auto node = std::make_shared<detail::TermNode>();
  node->kind = Kind::variable;
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::constant(std::string name) {
  auto node = std::make_shared<detail::TermNode>();
  node->kind = Kind::constant;
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::literal(BigInt value) {
  auto node = std::make_shared<detail::TermNode>();
  node->kind = Kind::literal;
  node->value = std::move(value);
  return Term(std::move(node));
}

Term Term::sum(Term lhs, Term rhs) {
  auto node = std::make_shared<detail::TermNode>();
  node->kind = Kind::sum;
  node->size = 1 + lhs.size() + rhs.size();
  node->child = {std::move(lhs), std::move(rhs)};
  return Term(std::move(node));
}

Term Term::difference(Term lhs, Term rhs) {
  auto node = std::make_shared<detail::TermNode>();
  node->kind = Kind::difference;
  node->size = 1 + lhs.size() + rhs.size();
  node->child = {std::move(lhs), std::move(rhs)};
  return Term(std::move(node));
}

Term Term::product(Term lhs, Term rhs) {
  auto node = std::make_shared<detail::TermNode>();
  node->kind = Kind::product;
  node->size = 1 + lhs.size() + rhs.size();
  node->child = {std::move(lhs), std::move(rhs)};
  return Term(std::move(node));
}

Term Term::power(Term base, std::uint64_t exponent) {
  auto node = std::make_shared<detail::TermNode>();
  node->kind = Kind::power;
  node->exponent = exponent;
  node->size = 1 + base.size();
  node->child = {std::move(base), Term()};
  return Term(std::move(node));
}

Term::Kind Term::kind() const { return checked_kind(node_); }

bool Term::is_literal(long v) const { return kind() == Kind::literal && node_->value == v; }

const std::string& Term::name() const {
  if (kind() != Kind::variable && kind() != Kind::constant)
    throw std::logic_error("Term::name on a non-symbol");
  return node_->name;
}

const BigInt& Term::value() const {
  if (kind() != Kind::literal)
    throw std::logic_error("Term::value on a non-literal");
  return node_->value;
}

const Term& Term::lhs() const {
  checked_kind(node_);
  if (is_leaf())
    throw std::logic_error("Term::lhs on a leaf");
  return node_->child[0];
}

const Term& Term::rhs() const {
  Kind k = kind();
  if (is_leaf() || k == Kind::power)
    throw std::logic_error("Term::rhs on a leaf or power");
  return node_->child[1];
}

std::uint64_t Term::exponent() const {
  if (kind() != Kind::power)
    throw std::logic_error("Term::exponent on a non-power");
  return node_->exponent;
}

std::size_t Term::size() const {
  checked_kind(node_);
  return node_->size;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_)
    return true;
  if (!a.node_ || !b.node_)
    return false;
  if (a.kind() != b.kind())
    return false;
  switch (a.kind()) {
  case Term::Kind::variable:
  case Term::Kind::constant:
    return a.name() == b.name();
  case Term::Kind::literal:
    return a.value() == b.value();
  case Term::Kind::power:
    return a.exponent() == b.exponent() && a.base() == b.base();
  default:
    return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

Term operator+(const Term& a, const Term& b) { return Term::sum(a, b); }
Term operator-(const Term& a, const Term& b) { return Term::difference(a, b); }
Term operator*(const Term& a, const Term& b) { return Term::product(a, b); }
Term pow(const Term& base, std::uint64_t exponent) { return Term::power(base, exponent); }

std::vector<std::string> term_variables(const Term& t) {
  std::vector<std::string> out;
  collect_names(t, Term::Kind::variable, out);
  return out;
}

std::vector<std::string> term_constants(const Term& t) {
  std::vector<std::string> out;
  collect_names(t, Term::Kind::constant, out);
  return out;
}

bool term_mentions(const Term& t, std::string_view var) {
  switch (t.kind()) {
  case Term::Kind::variable:
    return t.name() == var;
  case Term::Kind::constant:
  case Term::Kind::literal:
    return false;
  case Term::Kind::power:
    return term_mentions(t.base(), var);
  default:
    return term_mentions(t.lhs(), var) || term_mentions(t.rhs(), var);
  }
}

Term product_of(const std::vector<Term>& factors) {
  if (factors.empty())
    return Term::literal(1);
  Term acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i)
    acc = acc * factors[i];
  return acc;
}

Term sum_of(const std::vector<Term>& terms) {
  if (terms.empty())
    return Term::literal(0);
  Term acc = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i)
    acc = acc + terms[i];
  return acc;
}

bool is_identifier(std::string_view s) {
  if (s.empty())
    return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!std::isalpha(head) && head != '_')
    return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

} // namespace erank
