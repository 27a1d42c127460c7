#include "erank/ratfunc.hpp"

#include <sstream>

#include "erank/errors.hpp"

namespace erank {

namespace {

bool single_term(const Poly& p) {
  std::size_t nonzero = 0;
  for (auto c : p.c)
    nonzero += c != 0;
  return nonzero <= 1;
}

} // namespace

RatFuncField::RatFuncField(GaloisFieldPtr base) : ring_(std::move(base)) {}

RatFunc RatFuncField::make(Poly num, Poly den) const {
  if (den.is_zero())
    throw InvalidArgumentError("rational function with zero denominator");
  if (num.is_zero())
    return zero();
  Poly g = ring_.gcd(num, den);
  if (g.degree() > 0) {
    num = ring_.div_exact(num, g);
    den = ring_.div_exact(den, g);
  }
  auto lead = ring_.leading(den);
  if (lead != 1) {
    auto s = base().inv(lead);
    num = ring_.scale(num, s);
    den = ring_.scale(den, s);
  }
  return {std::move(num), std::move(den)};
}

RatFunc RatFuncField::from_poly(Poly num) const { return {std::move(num), ring_.one()}; }

RatFunc RatFuncField::zero() const { return {ring_.zero(), ring_.one()}; }
RatFunc RatFuncField::one() const { return {ring_.one(), ring_.one()}; }
RatFunc RatFuncField::t() const { return {ring_.monomial(1, 1), ring_.one()}; }
RatFunc RatFuncField::from_base(GaloisField::Elem c) const { return {ring_.constant(c), ring_.one()}; }
RatFunc RatFuncField::from_integer(const BigInt& n) const { return from_base(base().from_integer(n)); }

RatFunc RatFuncField::constant(const std::string& name) const {
  if (name == "t")
    return t();
  if (name == "a")
    return from_base(base().generator());
  throw UnsupportedProfileError("unknown constant '" + name + "' in " + this->name());
}

RatFunc RatFuncField::add(const RatFunc& a, const RatFunc& b) const {
  if (is_zero(a))
    return b;
  if (is_zero(b))
    return a;
  if (a.den == b.den) {
    Poly num = ring_.add(a.num, b.num);
    return make(std::move(num), a.den);
  }
  Poly g = ring_.gcd(a.den, b.den);
  if (g.degree() == 0) {
    // Coprime denominators keep the sum reduced.
    Poly num = ring_.add(ring_.mul(a.num, b.den), ring_.mul(b.num, a.den));
    if (num.is_zero())
      return zero();
    return {std::move(num), ring_.mul(a.den, b.den)};
  }
  Poly ad = ring_.div_exact(a.den, g), bd = ring_.div_exact(b.den, g);
  Poly num = ring_.add(ring_.mul(a.num, bd), ring_.mul(b.num, ad));
  if (num.is_zero())
    return zero();
  Poly g2 = ring_.gcd(num, g);
  Poly den = ring_.mul(ring_.mul(ad, bd), g);
  if (g2.degree() > 0) {
    num = ring_.div_exact(num, g2);
    den = ring_.div_exact(den, g2);
  }
  return {std::move(num), std::move(den)};
}

RatFunc RatFuncField::neg(const RatFunc& a) const { return {ring_.neg(a.num), a.den}; }

RatFunc RatFuncField::sub(const RatFunc& a, const RatFunc& b) const { return add(a, neg(b)); }

RatFunc RatFuncField::mul(const RatFunc& a, const RatFunc& b) const {
  if (is_zero(a) || is_zero(b))
    return zero();
  Poly g1 = ring_.gcd(a.num, b.den);
  Poly g2 = ring_.gcd(b.num, a.den);
  Poly an = a.num, bn = b.num, ad = a.den, bd = b.den;
  if (g1.degree() > 0) {
    an = ring_.div_exact(an, g1);
    bd = ring_.div_exact(bd, g1);
  }
  if (g2.degree() > 0) {
    bn = ring_.div_exact(bn, g2);
    ad = ring_.div_exact(ad, g2);
  }
  Poly num = ring_.mul(an, bn);
  Poly den = ring_.mul(ad, bd);
  auto lead = ring_.leading(den);
  if (lead != 1) {
    auto s = base().inv(lead);
    num = ring_.scale(num, s);
    den = ring_.scale(den, s);
  }
  return {std::move(num), std::move(den)};
}

RatFunc RatFuncField::inv(const RatFunc& a) const {
  if (is_zero(a))
    throw InvalidArgumentError("inverse of zero");
  return make(a.den, a.num);
}

RatFunc RatFuncField::pow(const RatFunc& a, std::uint64_t e) const {
  if (e == 0)
    return one();
  // Powers of a reduced fraction stay reduced; the denominator stays monic.
  return {ring_.pow(a.num, e), ring_.pow(a.den, e)};
}

bool RatFuncField::pth_power_test(const RatFunc& u) const {
  const std::uint32_t p = characteristic();
  auto only_p_exponents = [p](const Poly& poly) {
    for (std::size_t i = 0; i < poly.c.size(); ++i)
      if (poly.c[i] != 0 && i % p != 0)
        return false;
    return true;
  };
  return only_p_exponents(u.num) && only_p_exponents(u.den);
}

std::optional<RatFunc> RatFuncField::pth_root(const RatFunc& u) const {
  auto num = ring_.pth_root(u.num);
  if (!num)
    return std::nullopt;
  auto den = ring_.pth_root(u.den);
  if (!den)
    return std::nullopt;
  return RatFunc{std::move(*num), std::move(*den)};
}

RatFunc RatFuncField::frobenius(const RatFunc& u) const { return {ring_.frobenius(u.num), ring_.frobenius(u.den)}; }

std::vector<RatFunc> RatFuncField::p_basis_decompose(const RatFunc& z) const {
  const std::uint32_t p = characteristic();
  // z = N D^(p-1) / D^p; split the numerator by exponent residue mod p.
  Poly scaled = ring_.mul(z.num, ring_.pow(z.den, p - 1));
  std::vector<RatFunc> out;
  out.reserve(p);
  for (std::uint32_t i = 0; i < p; ++i) {
    std::vector<GaloisField::Elem> part;
    for (std::size_t k = i; k < scaled.c.size(); k += p) {
      std::size_t root_index = (k - i) / p;
      if (part.size() <= root_index)
        part.resize(root_index + 1, 0);
      part[root_index] = base().pth_root(scaled.c[k]);
    }
    out.push_back(make(ring_.from_coefficients(std::move(part)), z.den));
  }
  return out;
}

long RatFuncField::max_degree(const RatFunc& u) const { return std::max(u.num.degree(), u.den.degree()); }

std::string RatFuncField::format(const RatFunc& u) const {
  std::string num = ring_.format(u.num);
  if (u.den.degree() == 0)
    return num;
  std::ostringstream os;
  if (single_term(u.num))
    os << num;
  else
    os << '(' << num << ')';
  os << '/';
  if (single_term(u.den))
    os << ring_.format(u.den);
  else
    os << '(' << ring_.format(u.den) << ')';
  return os.str();
}

Rat RationalField::constant(const std::string& name) const {
  throw UnsupportedProfileError("unknown constant '" + name + "' in Q");
}

Rat RationalField::inv(const Rat& a) const {
  if (a == 0)
    throw InvalidArgumentError("inverse of zero");
  return 1 / a;
}

Rat RationalField::pow(const Rat& a, std::uint64_t e) const {
  Rat result = 1, base = a;
  while (e) {
    if (e & 1)
      result *= base;
    e >>= 1;
    if (e)
      base *= base;
  }
  return result;
}

std::string RationalField::format(const Rat& a) const {
  std::ostringstream os;
  os << boost::multiprecision::numerator(a);
  if (boost::multiprecision::denominator(a) != 1)
    os << '/' << boost::multiprecision::denominator(a);
  return os.str();
}

} // namespace erank
