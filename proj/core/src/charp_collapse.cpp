#include "erank/charp_collapse.hpp"

#include <map>

#include "erank/errors.hpp"

namespace erank {

Formula pi_formula(std::size_t n, std::uint64_t m) {
  if (n == 0 || m == 0)
    throw InvalidArgumentError("pi_formula needs n, m >= 1");
  std::vector<std::string> ys;
  std::vector<Formula> atoms;
  for (std::size_t i = 1; i <= n; ++i) {
    std::string y = "y" + std::to_string(i);
    ys.push_back(y);
    Term yt = Term::var(y);
    atoms.push_back(Formula::equal(Term::var("x" + std::to_string(i)), m == 1 ? yt : pow(yt, m)));
  }
  return Formula::exists(ys, conj_of(atoms));
}

Term BivariatePolynomial::to_term(const Term& x, const Term& y) const {
  auto power_of = [](const Term& t, std::uint64_t e) { return e == 1 ? t : pow(t, e); };
  std::vector<Term> parts;
  for (const auto& m : terms) {
    std::vector<Term> factors;
    if (m.coefficient != 1)
      factors.push_back(Term::literal(m.coefficient));
    if (m.x_exp > 0)
      factors.push_back(power_of(x, m.x_exp));
    if (m.y_exp > 0)
      factors.push_back(power_of(y, m.y_exp));
    parts.push_back(product_of(factors));
  }
  return sum_of(parts);
}

std::uint64_t BivariatePolynomial::degree_in_y() const {
  std::uint64_t d = 0;
  for (const auto& m : terms)
    d = std::max(d, m.y_exp);
  return d;
}

std::uint64_t BivariatePolynomial::degree_in_x() const {
  std::uint64_t d = 0;
  for (const auto& m : terms)
    d = std::max(d, m.x_exp);
  return d;
}

RatFunc BivariatePolynomial::evaluate(const RatFuncField& field, const RatFunc& x, const RatFunc& y) const {
  // f(a/b, c/d) = sum m a^i b^(Dx-i) c^j d^(Dy-j) / (b^Dx d^Dy)
  const PolyRing& R = field.ring();
  const std::uint64_t dx = degree_in_x(), dy = degree_in_y();
  using Memo = std::map<std::uint64_t, Poly>;
  Memo xn, xd, yn, yd;
  auto power = [&R](Memo& memo, const Poly& base, std::uint64_t e) -> const Poly& {
    auto it = memo.find(e);
    if (it == memo.end())
      it = memo.emplace(e, R.pow(base, e)).first;
    return it->second;
  };
  Poly num;
  for (const auto& m : terms) {
    auto c = field.base().from_integer(BigInt(m.coefficient));
    if (c == 0)
      continue;
    Poly xpart = R.mul(power(xn, x.num, m.x_exp), power(xd, x.den, dx - m.x_exp));
    Poly ypart = R.mul(power(yn, y.num, m.y_exp), power(yd, y.den, dy - m.y_exp));
    num = R.add(num, R.scale(R.mul(xpart, ypart), c));
  }
  return field.make(std::move(num), R.mul(power(xd, x.den, dx), power(yd, y.den, dy)));
}

BivariatePolynomial good_case_poly(std::uint32_t p, bool drop_x_term) {
  if (!is_prime(p))
    throw InvalidArgumentError("good_case_poly needs a prime, got " + std::to_string(p));
  const std::uint64_t q = p;
  BivariatePolynomial f;
  f.terms = {{1, q + 1, 1}, {1, q + 1, q * q}, {1, 2 * q + 1, 0}};
  if (!drop_x_term)
    f.terms.push_back({1, 1, 0});
  return f;
}

void CollapseConfig::validate() const {
  if (!is_prime(p))
    throw InvalidArgumentError("p must be prime, got " + std::to_string(p));
  if (n == 0 || k == 0)
    throw InvalidArgumentError("n and k must be positive");
  if (n > 16)
    throw CapExceededError("collapse is capped at n <= 16 (2^(n-1) branches)");
  if (mode == CollapseMode::general && (r == 0 || r % p == 0))
    throw InvalidArgumentError("general mode needs r > 0 with p not dividing r, got r=" + std::to_string(r));
  if (mode == CollapseMode::none)
    throw InvalidArgumentError("collapse mode must be ufd or general");
}

Term CollapseConfig::g_term(const Term& x) const {
  if (mode == CollapseMode::general)
    return (r == 1 ? x : pow(x, r)) + Term::literal(1);
  return x;
}

Term CollapseConfig::h_term(const Term& x, const Term& y) const { return f().to_term(g_term(x), y); }

std::vector<std::string> CollapseConfig::free_names() const {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i)
    out.push_back("x" + std::to_string(i));
  return out;
}

namespace {

// Matrix of the recursion for the argument list `args` (values of X_1..X_m).
Formula collapse_matrix(const CollapseConfig& cfg, std::vector<Term> args, const Term& y) {
  if (args.size() == 1)
    return Formula::equal(args[0], pow(y, cfg.p));
  Term last = args.back();
  Term gx = cfg.g_term(last);
  std::vector<Term> zero_branch(args.begin(), args.end() - 1);
  std::vector<Term> unit_branch(args.begin(), args.end() - 1);
  unit_branch.back() = cfg.h_term(last, args[args.size() - 2]);
  Formula a = Formula::conj(Formula::equal(gx, Term::literal(0)), collapse_matrix(cfg, zero_branch, y));
  Formula b = Formula::conj(Formula::not_equal(gx, Term::literal(0)), collapse_matrix(cfg, unit_branch, y));
  return Formula::disj(a, b);
}

} // namespace

PrenexFormula collapse_pth_powers(const CollapseConfig& cfg) {
  cfg.validate();
  std::vector<Term> args;
  for (const auto& x : cfg.free_names())
    args.push_back(Term::var(x));
  Term y = Term::var(cfg.witness_var);
  return {{cfg.witness_var}, collapse_matrix(cfg, args, y)};
}

PrenexFormula frobenius_lift(const PrenexFormula& phi, std::uint32_t p, unsigned k) {
  if (phi.bound.size() != 1)
    throw InvalidArgumentError("frobenius_lift expects exactly one bound variable");
  if (k == 0)
    throw InvalidArgumentError("k must be positive");
  if (k == 1)
    return phi;
  std::uint64_t e = 1;
  for (unsigned i = 1; i < k; ++i) {
    if (e > (std::uint64_t{1} << 40) / p)
      throw CapExceededError("p^(k-1) is too large");
    e *= p;
  }
  const std::string& y = phi.bound[0];
  return {phi.bound, substitute(phi.matrix, {{y, pow(Term::var(y), e)}})};
}

PrenexFormula fin_gen_pipeline(const CollapseConfig& cfg) { return frobenius_lift(collapse_pth_powers(cfg), cfg.p, cfg.k); }

std::optional<RatFunc> pk_root(const RatFuncField& field, const RatFunc& u, unsigned k) {
  RatFunc cur = u;
  for (unsigned i = 0; i < k; ++i) {
    auto r = field.pth_root(cur);
    if (!r)
      return std::nullopt;
    cur = std::move(*r);
  }
  return cur;
}

std::optional<RatFunc> synth_witness(const std::vector<RatFunc>& xs, const CollapseConfig& cfg, const RatFuncField& field) {
  cfg.validate();
  if (xs.size() != cfg.n)
    throw InvalidArgumentError("expected " + std::to_string(cfg.n) + " components, got " + std::to_string(xs.size()));
  if (field.characteristic() != cfg.p)
    throw InvalidArgumentError("configuration p does not match the field characteristic");
  for (const auto& x : xs)
    if (!pk_root(field, x, cfg.k))
      return std::nullopt;
  // Replaying the branch recursion gives y^(p^k); undo the Frobenius k times.
  return pk_root(field, collapse_branch_value(field, cfg, xs), cfg.k);
}

} // namespace erank
