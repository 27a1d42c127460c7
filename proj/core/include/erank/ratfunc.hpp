// Rational function fields F_q(t) and the rationals.

#ifndef ERANK_RATFUNC_HPP
#define ERANK_RATFUNC_HPP

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "erank/polynomial.hpp"

namespace erank {

// Reduced fraction with monic denominator; zero is 0/1.
struct RatFunc {
  Poly num;
  Poly den;

  friend bool operator==(const RatFunc&, const RatFunc&) = default;
  friend auto operator<=>(const RatFunc&, const RatFunc&) = default;
};

class RatFuncField {
public:
  using Elem = RatFunc;

  explicit RatFuncField(GaloisFieldPtr base);

  const GaloisField& base() const { return ring_.field(); }
  const GaloisFieldPtr& base_ptr() const { return ring_.field_ptr(); }
  const PolyRing& ring() const { return ring_; }
  std::uint32_t characteristic() const { return base().characteristic(); }

  // Normalizes num/den. Throws InvalidArgumentError for a zero denominator.
  RatFunc make(Poly num, Poly den) const;
  RatFunc from_poly(Poly num) const;

  RatFunc zero() const;
  RatFunc one() const;
  RatFunc t() const;
  RatFunc from_base(GaloisField::Elem c) const;
  RatFunc from_integer(const BigInt& n) const;
  // `t`, plus the base generator `a` when q is not prime.
  RatFunc constant(const std::string& name) const;

  RatFunc add(const RatFunc& a, const RatFunc& b) const;
  RatFunc sub(const RatFunc& a, const RatFunc& b) const;
  RatFunc neg(const RatFunc& a) const;
  RatFunc mul(const RatFunc& a, const RatFunc& b) const;
  RatFunc inv(const RatFunc& a) const;
  RatFunc div(const RatFunc& a, const RatFunc& b) const { return mul(a, inv(b)); }
  RatFunc pow(const RatFunc& a, std::uint64_t e) const;
  bool is_zero(const RatFunc& a) const { return a.num.is_zero(); }
  bool equal(const RatFunc& a, const RatFunc& b) const { return a == b; }

  // u is a p-th power iff its reduced numerator and denominator lie in
  // F_q[t^p]; every element of F_q is a p-th power.
  bool pth_power_test(const RatFunc& u) const;
  std::optional<RatFunc> pth_root(const RatFunc& u) const;
  RatFunc frobenius(const RatFunc& u) const;
  // Components c_0..c_{p-1} with z = sum t^i c_i^p.
  std::vector<RatFunc> p_basis_decompose(const RatFunc& z) const;

  long max_degree(const RatFunc& u) const;
  std::string format(const RatFunc& u) const;
  std::string name() const { return base().name() + "t"; }

private:
  PolyRing ring_;
};

using Rat = boost::multiprecision::cpp_rational;

class RationalField {
public:
  using Elem = Rat;

  Rat zero() const { return 0; }
  Rat one() const { return 1; }
  Rat from_integer(const BigInt& n) const { return Rat(n); }
  // Q has no named constants.
  Rat constant(const std::string& name) const;
  Rat add(const Rat& a, const Rat& b) const { return a + b; }
  Rat sub(const Rat& a, const Rat& b) const { return a - b; }
  Rat neg(const Rat& a) const { return -a; }
  Rat mul(const Rat& a, const Rat& b) const { return a * b; }
  Rat inv(const Rat& a) const;
  Rat div(const Rat& a, const Rat& b) const { return mul(a, inv(b)); }
  Rat pow(const Rat& a, std::uint64_t e) const;
  bool is_zero(const Rat& a) const { return a == 0; }
  bool equal(const Rat& a, const Rat& b) const { return a == b; }
  std::string format(const Rat& a) const;
  std::string name() const { return "Q"; }
};

} // namespace erank

#endif
