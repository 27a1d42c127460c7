// Finite fields F_q, q = p^d, as F_p[a]/(m(a)) for a stored irreducible m.
//
// Elements are indices: c_0 + c_1 p + ... + c_{d-1} p^{d-1} encodes
// c_0 + c_1 a + ... + c_{d-1} a^{d-1}. Index order is the enumeration order.

#ifndef ERANK_GALOIS_FIELD_HPP
#define ERANK_GALOIS_FIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "erank/term.hpp"

namespace erank {

bool is_prime(std::uint64_t n);
// (p, d) with q = p^d, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint32_t, unsigned>> prime_power(std::uint64_t q);

class GaloisField {
public:
  using Elem = std::uint32_t;

  // Lowest irreducible monic modulus of degree d in index order.
  static std::shared_ptr<const GaloisField> make(std::uint32_t p, unsigned d);
  static std::shared_ptr<const GaloisField> make_order(std::uint64_t q);

  // Throws InvalidArgumentError unless `modulus` (low to high, monic, degree d)
  // is irreducible over F_p.
  GaloisField(std::uint32_t p, std::vector<std::uint32_t> modulus);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return d_; }
  std::uint32_t order() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  // The class of a. Throws UnsupportedProfileError for prime fields.
  Elem generator() const;
  Elem primitive_element() const { return primitive_; }
  // Named constants: `a` is the generator when d > 1.
  Elem constant(const std::string& name) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  // Throws InvalidArgumentError on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem from_integer(const BigInt& n) const;
  Elem from_int(long long n) const;
  // Unique p-th root (Frobenius is bijective on F_q).
  Elem pth_root(Elem a) const;
  bool is_zero(Elem a) const { return a == 0; }
  bool equal(Elem a, Elem b) const { return a == b; }

  std::vector<std::uint32_t> coefficients(Elem a) const;
  Elem from_coefficients(const std::vector<std::uint32_t>& c) const;

  // Integers for prime fields, "[a^2+1]" otherwise.
  std::string format(Elem a) const;
  // Polynomial in the generator, as a term over the constant `a`.
  Term to_term(Elem a) const;

  // Multiplicative order of a nonzero element.
  std::uint64_t multiplicative_order(Elem a) const;

  std::string name() const { return "F" + std::to_string(q_); }

private:
  void build_tables();

  std::uint32_t p_;
  unsigned d_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  Elem primitive_ = 1;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
  std::vector<Elem> add_table_;
  std::vector<std::uint32_t> pow_p_; // p^i
};

using GaloisFieldPtr = std::shared_ptr<const GaloisField>;

// Dense univariate polynomials over F_p with small coefficients, low to high.
namespace fp_poly {
using Coeffs = std::vector<std::uint32_t>;
void trim(Coeffs& a);
Coeffs mod(Coeffs a, const Coeffs& m, std::uint32_t p);
bool irreducible(const Coeffs& m, std::uint32_t p);
} // namespace fp_poly

} // namespace erank

#endif
