// One-quantifier definitions of tuples of p^k-th powers in characteristic p.

#ifndef ERANK_CHARP_COLLAPSE_HPP
#define ERANK_CHARP_COLLAPSE_HPP

#include <optional>
#include <string>
#include <vector>

#include "erank/normal_forms.hpp"
#include "erank/ratfunc.hpp"

namespace erank {

// E y1..yn . x1 = y1^m & ... & xn = yn^m
Formula pi_formula(std::size_t n, std::uint64_t m);

struct Monomial {
  long coefficient;
  std::uint64_t x_exp;
  std::uint64_t y_exp;
};

// f(X,Y) = X^(p+1) Y + X^(p+1) Y^(p^2) + X^(2p+1) + X. `drop_x_term` removes the
// final +X (mutation control only; the result is no longer a valid f).
struct BivariatePolynomial {
  std::vector<Monomial> terms;

  Term to_term(const Term& x, const Term& y) const;
  std::uint64_t degree_in_y() const;
  std::uint64_t degree_in_x() const;

  template <class F>
  typename F::Elem evaluate(const F& field, const typename F::Elem& x, const typename F::Elem& y) const {
    auto acc = field.zero();
    for (const auto& m : terms) {
      auto v = field.mul(field.pow(x, m.x_exp), field.pow(y, m.y_exp));
      auto c = field.from_integer(BigInt(m.coefficient));
      acc = field.add(acc, field.mul(c, v));
    }
    return acc;
  }
  // Over F_q(t): one common denominator, reduced once.
  RatFunc evaluate(const RatFuncField& field, const RatFunc& x, const RatFunc& y) const;
};

BivariatePolynomial good_case_poly(std::uint32_t p, bool drop_x_term = false);

struct CollapseConfig {
  std::uint32_t p = 2;
  std::size_t n = 1;
  unsigned k = 1;
  CollapseMode mode = CollapseMode::ufd_p_divisible_units;
  unsigned r = 1; // general mode: g = X^r + 1, p must not divide r
  bool drop_x_term = false;
  std::string witness_var = "y";

  // Throws InvalidArgumentError on a non-prime p, n or k of zero, p | r in
  // general mode, and CapExceededError for n > 16.
  void validate() const;
  // g as a term in x; g = x in ufd mode.
  Term g_term(const Term& x) const;
  // h(X,Y) = f(g(X), Y)
  Term h_term(const Term& x, const Term& y) const;
  BivariatePolynomial f() const { return good_case_poly(p, drop_x_term); }
  std::vector<std::string> free_names() const; // x1..xn
};

// The E_1 formula for p-th powers (k = 1), with 2^(n-1) branches sharing y.
PrenexFormula collapse_pth_powers(const CollapseConfig& cfg);
// Substitutes y -> y^(p^(k-1)) in the matrix.
PrenexFormula frobenius_lift(const PrenexFormula& phi, std::uint32_t p, unsigned k);
// collapse_pth_powers followed by frobenius_lift to exponent p^k.
PrenexFormula fin_gen_pipeline(const CollapseConfig& cfg);

// Value of g at x over a field.
template <class F>
typename F::Elem collapse_g(const F& field, const CollapseConfig& cfg, const typename F::Elem& x) {
  if (cfg.mode == CollapseMode::general)
    return field.add(field.pow(x, cfg.r), field.one());
  return x;
}

// The value that must equal y^(p^k) on the branch selected by xs.
template <class F>
typename F::Elem collapse_branch_value(const F& field, const CollapseConfig& cfg, std::vector<typename F::Elem> xs) {
  const auto f = cfg.f();
  while (xs.size() > 1) {
    const auto& last = xs.back();
    auto gx = collapse_g(field, cfg, last);
    if (!field.is_zero(gx))
      xs[xs.size() - 2] = f.evaluate(field, gx, xs[xs.size() - 2]);
    xs.pop_back();
  }
  return xs.front();
}

// p^k-th root, or nullopt.
std::optional<RatFunc> pk_root(const RatFuncField& field, const RatFunc& u, unsigned k);

// Witness y for the fin_gen_pipeline matrix at xs, or nullopt when some x_i
// is not a p^k-th power (or the branch value has no p^k-th root).
std::optional<RatFunc> synth_witness(const std::vector<RatFunc>& xs, const CollapseConfig& cfg, const RatFuncField& field);

} // namespace erank

#endif
