// Field profiles: which structure or theory a computation targets.

#ifndef ERANK_PROFILE_HPP
#define ERANK_PROFILE_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "erank/errors.hpp"
#include "erank/galois_field.hpp"
#include "erank/ratfunc.hpp"
#include "erank/term.hpp"

namespace erank {

enum class FieldKind { finite, rationals, rational_function, abstract_char, real_closed };

enum class CollapseMode { none, ufd_p_divisible_units, general };

// A univariate polynomial g(Z) with term coefficients (constants such as
// c:t or c:a may appear), lowest degree first.
struct UnivariatePolynomial {
  std::vector<Term> coefficients;

  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  Term evaluate_at(const Term& z) const;
  // g*(z0, z1) = z0^deg * g(z1 / z0).
  Term homogenized(const Term& z0, const Term& z1) const;
  std::string format(const std::string& var = "Z") const;
};

struct FieldProfile {
  FieldKind kind = FieldKind::rationals;
  std::uint32_t p = 0; // characteristic, 0 for characteristic zero
  unsigned d = 1;      // F_q or F_q(t) with q = p^d
  bool perfect = true;
  bool has_order = false;
  CollapseMode collapse_mode = CollapseMode::none;
  unsigned collapse_r = 1;
  std::optional<UnivariatePolynomial> rootless;
  GaloisFieldPtr field; // finite and rational_function kinds

  static FieldProfile finite(std::uint32_t p, unsigned d = 1);
  static FieldProfile finite_order(std::uint64_t q);
  static FieldProfile rationals();
  static FieldProfile rational_function(std::uint32_t p, unsigned d = 1);
  static FieldProfile abstract_char(std::uint32_t p);
  static FieldProfile real_closed();

  // Q, F<q>, F<q>t, RCF, char<p>. Throws InvalidArgumentError.
  static FieldProfile parse(const std::string& name);

  // Requires p not dividing r.
  FieldProfile with_collapse(CollapseMode mode, unsigned r = 1) const;

  std::uint64_t order() const; // finite kinds only
  bool evaluable() const { return kind == FieldKind::finite || kind == FieldKind::rationals || kind == FieldKind::rational_function; }
  std::string name() const;
  // Theory tag recorded in reports.
  std::string theory() const;
};

// g(Z) with no zero in the structure.
//   Q, RCF: Z^2 + 1.  F_q: lowest monic irreducible quadratic Z^2 + bZ + c in
//   (b, c) index order.  F_q(t): Z^2 - t for odd q, Z^2 + Z + t in char 2.
// Throws UnsupportedProfileError for abstract profiles.
UnivariatePolynomial rootless_default(const FieldProfile& profile);

// Runs fn with the concrete field object of an evaluable profile:
// GaloisField, RationalField or RatFuncField.
template <class Fn>
decltype(auto) with_field(const FieldProfile& profile, Fn&& fn) {
  switch (profile.kind) {
  case FieldKind::finite:
    return fn(*profile.field);
  case FieldKind::rationals:
    return fn(RationalField{});
  case FieldKind::rational_function:
    return fn(RatFuncField(profile.field));
  default:
    throw UnsupportedProfileError("profile " + profile.name() + " supports symbolic passes only");
  }
}

// Evaluates t in `field`; constants go through field.constant(name).
// Throws InvalidArgumentError for an unassigned variable.
template <class F>
typename F::Elem eval_term(const F& field, const Term& t, const std::map<std::string, typename F::Elem>& assignment) {
  switch (t.kind()) {
  case Term::Kind::variable: {
    auto it = assignment.find(t.name());
    if (it == assignment.end())
      throw InvalidArgumentError("no value assigned to variable '" + t.name() + "'");
    return it->second;
  }
  case Term::Kind::constant:
    return field.constant(t.name());
  case Term::Kind::literal:
    return field.from_integer(t.value());
  case Term::Kind::sum:
    return field.add(eval_term(field, t.lhs(), assignment), eval_term(field, t.rhs(), assignment));
  case Term::Kind::difference:
    return field.sub(eval_term(field, t.lhs(), assignment), eval_term(field, t.rhs(), assignment));
  case Term::Kind::product:
    return field.mul(eval_term(field, t.lhs(), assignment), eval_term(field, t.rhs(), assignment));
  case Term::Kind::power:
    return field.pow(eval_term(field, t.base(), assignment), t.exponent());
  }
  throw std::logic_error("unreachable term kind");
}

// An element of any evaluable profile.
using Value = std::variant<GaloisField::Elem, Rat, RatFunc>;
using Assignment = std::map<std::string, Value>;

Value eval_term(const FieldProfile& profile, const Term& t, const Assignment& assignment);
std::string format_value(const FieldProfile& profile, const Value& v);
bool values_equal(const Value& a, const Value& b);

} // namespace erank

#endif
