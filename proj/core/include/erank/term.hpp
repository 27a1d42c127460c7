// Terms of the language of rings with named constants.

#ifndef ERANK_TERM_HPP
#define ERANK_TERM_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace erank {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {
struct TermNode;
}

// Immutable term tree. Copies share structure.
class Term {
public:
  enum class Kind : std::uint8_t { variable, constant, literal, sum, difference, product, power };

  static Term var(std::string name);
  static Term constant(std::string name);
  static Term literal(BigInt value);
  static Term sum(Term lhs, Term rhs);
  static Term difference(Term lhs, Term rhs);
  static Term product(Term lhs, Term rhs);
  static Term power(Term base, std::uint64_t exponent);

  // Placeholder; not a valid term until assigned.
  Term() = default;
  bool valid() const { return node_ != nullptr; }

  Kind kind() const;
  bool is_leaf() const { return kind() == Kind::variable || kind() == Kind::constant || kind() == Kind::literal; }
  bool is_literal(long v) const;

  // variable / constant name
  const std::string& name() const;
  const BigInt& value() const;
  const Term& lhs() const;
  const Term& rhs() const;
  // base of a power
  const Term& base() const { return lhs(); }
  std::uint64_t exponent() const;

  // number of nodes, counting shared subtrees once per occurrence
  std::size_t size() const;

  const void* identity() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);

private:
  explicit Term(std::shared_ptr<const detail::TermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

namespace detail {
struct TermNode {
  Term::Kind kind;
  std::string name;
  BigInt value;
  std::uint64_t exponent = 0;
  std::array<Term, 2> child;
  std::size_t size = 1;
};
} // namespace detail

Term operator+(const Term& a, const Term& b);
Term operator-(const Term& a, const Term& b);
Term operator*(const Term& a, const Term& b);
Term pow(const Term& base, std::uint64_t exponent);

// Variables in first-occurrence order.
std::vector<std::string> term_variables(const Term& t);
std::vector<std::string> term_constants(const Term& t);
bool term_mentions(const Term& t, std::string_view var);

// Product of the given factors, literal 1 when empty.
Term product_of(const std::vector<Term>& factors);
Term sum_of(const std::vector<Term>& terms);

bool is_identifier(std::string_view s);

} // namespace erank

#endif
