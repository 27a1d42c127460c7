#include "erank/profile.hpp"

#include <cctype>

#include "erank/parser.hpp"

namespace erank {

namespace {

// Coefficient that means "subtract the rest": a negative literal or 0 - x.
std::optional<Term> negated(const Term& c) {
  if (c.kind() == Term::Kind::literal && c.value() < 0)
    return Term::literal(-c.value());
  if (c.kind() == Term::Kind::difference && c.lhs().is_literal(0))
    return c.rhs();
  return std::nullopt;
}

Term build_sum(const std::vector<std::pair<Term, Term>>& monomials) {
  // (coefficient, monomial) pairs, monomial may be invalid for a constant term
  Term acc;
  for (const auto& [coef, mono] : monomials) {
    auto neg = negated(coef);
    Term magnitude = neg ? *neg : coef;
    Term part;
    if (!mono.valid())
      part = magnitude;
    else if (magnitude.is_literal(1))
      part = mono;
    else
      part = magnitude * mono;
    if (!acc.valid())
      acc = neg ? Term::difference(Term::literal(0), part) : part;
    else
      acc = neg ? acc - part : acc + part;
  }
  return acc.valid() ? acc : Term::literal(0);
}

std::uint32_t parse_uint(const std::string& s, std::size_t from) {
  if (from >= s.size())
    throw InvalidArgumentError("missing number in profile name '" + s + "'");
  std::uint64_t v = 0;
  for (std::size_t i = from; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw InvalidArgumentError("bad profile name '" + s + "'");
    v = v * 10 + static_cast<unsigned>(s[i] - '0');
    if (v > (1u << 30))
      throw InvalidArgumentError("profile order too large in '" + s + "'");
  }
  return static_cast<std::uint32_t>(v);
}

} // namespace

Term UnivariatePolynomial::evaluate_at(const Term& z) const {
  std::vector<std::pair<Term, Term>> parts;
  for (std::size_t i = coefficients.size(); i-- > 0;) {
    const Term& c = coefficients[i];
    if (c.is_literal(0))
      continue;
    parts.emplace_back(c, i == 0 ? Term() : (i == 1 ? z : pow(z, i)));
  }
  return build_sum(parts);
}

Term UnivariatePolynomial::homogenized(const Term& z0, const Term& z1) const {
  const std::size_t n = degree();
  std::vector<std::pair<Term, Term>> parts;
  for (std::size_t i = coefficients.size(); i-- > 0;) {
    const Term& c = coefficients[i];
    if (c.is_literal(0))
      continue;
    std::vector<Term> factors;
    if (n - i > 0)
      factors.push_back(n - i == 1 ? z0 : pow(z0, n - i));
    if (i > 0)
      factors.push_back(i == 1 ? z1 : pow(z1, i));
    parts.emplace_back(c, factors.empty() ? Term() : product_of(factors));
  }
  return build_sum(parts);
}

std::string UnivariatePolynomial::format(const std::string& var) const {
  return format_term(evaluate_at(Term::var(var)));
}

FieldProfile FieldProfile::finite(std::uint32_t p, unsigned d) {
  FieldProfile out;
  out.kind = FieldKind::finite;
  out.field = GaloisField::make(p, d);
  out.p = p;
  out.d = d;
  out.perfect = true;
  out.rootless = rootless_default(out);
  return out;
}

FieldProfile FieldProfile::finite_order(std::uint64_t q) {
  auto pd = prime_power(q);
  if (!pd)
    throw InvalidArgumentError("F" + std::to_string(q) + ": order is not a prime power");
  return finite(pd->first, pd->second);
}

FieldProfile FieldProfile::rationals() {
  FieldProfile out;
  out.kind = FieldKind::rationals;
  out.rootless = rootless_default(out);
  return out;
}

FieldProfile FieldProfile::rational_function(std::uint32_t p, unsigned d) {
  FieldProfile out;
  out.kind = FieldKind::rational_function;
  out.field = GaloisField::make(p, d);
  out.p = p;
  out.d = d;
  out.perfect = false;
  out.collapse_mode = CollapseMode::ufd_p_divisible_units;
  out.rootless = rootless_default(out);
  return out;
}

FieldProfile FieldProfile::abstract_char(std::uint32_t p) {
  if (p != 0 && !is_prime(p))
    throw InvalidArgumentError("characteristic must be 0 or prime, got " + std::to_string(p));
  FieldProfile out;
  out.kind = FieldKind::abstract_char;
  out.p = p;
  // Not every field of characteristic p is perfect.
  out.perfect = p == 0;
  return out;
}

FieldProfile FieldProfile::real_closed() {
  FieldProfile out;
  out.kind = FieldKind::real_closed;
  out.has_order = true;
  out.rootless = rootless_default(out);
  return out;
}

FieldProfile FieldProfile::parse(const std::string& name) {
  if (name == "Q")
    return rationals();
  if (name == "RCF")
    return real_closed();
  if (name.rfind("char", 0) == 0)
    return abstract_char(parse_uint(name, 4));
  if (!name.empty() && name[0] == 'F') {
    bool function_field = name.back() == 't';
    std::string digits = function_field ? name.substr(0, name.size() - 1) : name;
    std::uint32_t q = parse_uint(digits, 1);
    auto pd = prime_power(q);
    if (!pd)
      throw InvalidArgumentError("profile '" + name + "': " + std::to_string(q) + " is not a prime power");
    if (q > (1u << 22))
      throw UnsupportedProfileError("profile '" + name + "': field order above 2^22");
    return function_field ? rational_function(pd->first, pd->second) : finite(pd->first, pd->second);
  }
  throw InvalidArgumentError("unknown profile '" + name + "' (expected Q, F<q>, F<q>t, RCF or char<p>)");
}

FieldProfile FieldProfile::with_collapse(CollapseMode mode, unsigned r) const {
  if (mode == CollapseMode::general) {
    if (r == 0)
      throw InvalidArgumentError("collapse parameter r must be positive");
    if (p != 0 && r % p == 0)
      throw InvalidArgumentError("collapse parameter r=" + std::to_string(r) + " is divisible by p=" + std::to_string(p));
  }
  FieldProfile out = *this;
  out.collapse_mode = mode;
  out.collapse_r = mode == CollapseMode::general ? r : 1;
  return out;
}

std::uint64_t FieldProfile::order() const {
  if (kind != FieldKind::finite)
    throw UnsupportedProfileError("profile " + name() + " is infinite");
  return field->order();
}

std::string FieldProfile::name() const {
  switch (kind) {
  case FieldKind::finite:
    return field->name();
  case FieldKind::rationals:
    return "Q";
  case FieldKind::rational_function:
    return field->name() + "t";
  case FieldKind::abstract_char:
    return "char" + std::to_string(p);
  case FieldKind::real_closed:
    return "RCF";
  }
  return "?";
}

std::string FieldProfile::theory() const {
  switch (kind) {
  case FieldKind::abstract_char:
    return p == 0 ? "T_fields" : "char_p(" + std::to_string(p) + ")";
  case FieldKind::real_closed:
    return "RCF";
  default:
    return "profile(" + name() + ")";
  }
}

UnivariatePolynomial rootless_default(const FieldProfile& profile) {
  UnivariatePolynomial g;
  switch (profile.kind) {
  case FieldKind::rationals:
  case FieldKind::real_closed:
    g.coefficients = {Term::literal(1), Term::literal(0), Term::literal(1)};
    return g;
  case FieldKind::finite: {
    const GaloisField& F = *profile.field;
    const auto q = F.order();
    // Z^2 + bZ + c has no root iff the quadratic is irreducible.
    for (GaloisField::Elem b = 0; b < q; ++b) {
      for (GaloisField::Elem c = 0; c < q; ++c) {
        bool has_root = false;
        for (GaloisField::Elem z = 0; z < q && !has_root; ++z)
          has_root = F.add(F.add(F.mul(z, z), F.mul(b, z)), c) == 0;
        if (!has_root) {
          g.coefficients = {F.to_term(c), F.to_term(b), Term::literal(1)};
          return g;
        }
      }
    }
    throw std::logic_error("no irreducible quadratic found");
  }
  case FieldKind::rational_function:
    if (profile.p == 2)
      g.coefficients = {Term::constant("t"), Term::literal(1), Term::literal(1)};
    else
      g.coefficients = {Term::difference(Term::literal(0), Term::constant("t")), Term::literal(0), Term::literal(1)};
    return g;
  case FieldKind::abstract_char:
    break;
  }
  throw UnsupportedProfileError("no default rootless polynomial for " + profile.name() + "; supply one");
}

Value eval_term(const FieldProfile& profile, const Term& t, const Assignment& assignment) {
  return with_field(profile, [&](const auto& field) -> Value {
    using Elem = typename std::decay_t<decltype(field)>::Elem;
    std::map<std::string, Elem> local;
    for (const auto& [name, v] : assignment) {
      const Elem* e = std::get_if<Elem>(&v);
      if (!e)
        throw InvalidArgumentError("value of '" + name + "' does not belong to " + profile.name());
      local.emplace(name, *e);
    }
    return eval_term(field, t, local);
  });
}

std::string format_value(const FieldProfile& profile, const Value& v) {
  return with_field(profile, [&](const auto& field) -> std::string {
    using Elem = typename std::decay_t<decltype(field)>::Elem;
    const Elem* e = std::get_if<Elem>(&v);
    if (!e)
      throw InvalidArgumentError("value does not belong to " + profile.name());
    return field.format(*e);
  });
}

bool values_equal(const Value& a, const Value& b) { return a == b; }

} // namespace erank
