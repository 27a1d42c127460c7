// Univariate polynomials over a finite field.

#ifndef ERANK_POLYNOMIAL_HPP
#define ERANK_POLYNOMIAL_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "erank/galois_field.hpp"

namespace erank {

// Coefficients low to high, no trailing zeros; the zero polynomial is empty.
struct Poly {
  std::vector<GaloisField::Elem> c;

  bool is_zero() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }
  friend bool operator==(const Poly&, const Poly&) = default;
  friend auto operator<=>(const Poly&, const Poly&) = default;
};

class PolyRing {
public:
  using Elem = GaloisField::Elem;

  explicit PolyRing(GaloisFieldPtr field);

  const GaloisField& field() const { return *field_; }
  const GaloisFieldPtr& field_ptr() const { return field_; }

  Poly zero() const { return {}; }
  Poly one() const { return constant(1); }
  Poly constant(Elem c) const;
  Poly monomial(Elem c, std::size_t degree) const;
  Poly from_coefficients(std::vector<Elem> c) const;

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly scale(const Poly& a, Elem s) const;
  Poly pow(const Poly& a, std::uint64_t e) const;
  // Throws InvalidArgumentError for a zero divisor.
  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
  Poly div_exact(const Poly& a, const Poly& b) const;
  // Monic gcd; gcd(0, 0) = 0.
  Poly gcd(const Poly& a, const Poly& b) const;
  Poly monic(const Poly& a) const;
  Elem leading(const Poly& a) const { return a.c.back(); }
  Poly derivative(const Poly& a) const;
  Elem evaluate(const Poly& a, Elem x) const;

  // w with w^p = a when a only has exponents divisible by p.
  std::optional<Poly> pth_root(const Poly& a) const;
  // a(t^p) coefficientwise raised to the p-th power, i.e. a^p.
  Poly frobenius(const Poly& a) const;

  std::string format(const Poly& a, const std::string& var = "t") const;

private:
  GaloisFieldPtr field_;
};

} // namespace erank

#endif
