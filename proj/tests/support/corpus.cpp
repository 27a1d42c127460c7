#include "corpus.hpp"

#include <algorithm>
#include <random>

#include "erank/profile.hpp"

namespace erank::testing {

namespace {

class Generator {
public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  CorpusEntry entry() {
    const int nfree = uniform(1, 3);
    // Quantifier budgets weighted 1:2:3:3 over 0..3.
    budget_ = std::discrete_distribution<int>({1, 2, 3, 3})(rng_);
    std::vector<std::string> frees;
    for (int i = 1; i <= nfree; ++i)
      frees.push_back("x" + std::to_string(i));
    Formula f = formula(frees, 3);
    return {f, frees};
  }

private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  Term monomial(const std::vector<std::string>& scope) {
    Term v = Term::var(scope[uniform(0, static_cast<int>(scope.size()) - 1)]);
    switch (uniform(0, 3)) {
    case 0:
      return v;
    case 1:
      return pow(v, 2);
    case 2:
      return v * Term::var(scope[uniform(0, static_cast<int>(scope.size()) - 1)]);
    default:
      return Term::literal(uniform(2, 3)) * v;
    }
  }

  Term poly(const std::vector<std::string>& scope) {
    Term t = monomial(scope);
    const int extra = uniform(0, 2);
    for (int i = 0; i < extra; ++i)
      t = chance(0.7) ? t + monomial(scope) : t - monomial(scope);
    if (chance(0.5))
      t = t + Term::literal(uniform(-1, 2));
    return t;
  }

  Formula atom(const std::vector<std::string>& scope) {
    Term lhs = poly(scope);
    Term rhs = chance(0.5) ? Term::literal(0) : poly(scope);
    switch (uniform(0, 5)) {
    case 0:
    case 1:
      return Formula::not_equal(lhs, rhs);
    case 2:
      return Formula::negation(Formula::equal(lhs, rhs));
    default:
      return Formula::equal(lhs, rhs);
    }
  }

  Formula formula(std::vector<std::string> scope, int depth) {
    const int roll = uniform(0, 9);
    if (depth == 0 || (roll < 2 && depth < 3))
      return atom(scope);
    if (roll < 6 && budget_ > 0) {
      // Names come from a small pool so siblings collide and shadow.
      static const std::vector<std::string> pool = {"y", "z", "w"};
      const int n = std::min(budget_, uniform(1, 2));
      budget_ -= n;
      std::vector<std::string> bound;
      while (static_cast<int>(bound.size()) < n) {
        const auto& name = pool[uniform(0, 2)];
        if (std::find(bound.begin(), bound.end(), name) == bound.end())
          bound.push_back(name);
      }
      for (const auto& b : bound)
        if (std::find(scope.begin(), scope.end(), b) == scope.end())
          scope.push_back(b);
      return Formula::exists(bound, formula(scope, depth - 1));
    }
    Formula a = formula(scope, depth - 1);
    Formula b = formula(scope, depth - 1);
    return roll < 8 ? Formula::conj(a, b) : Formula::disj(a, b);
  }

  std::mt19937_64 rng_;
  int budget_ = 0;
};

} // namespace

std::vector<CorpusEntry> generate_corpus(std::size_t count, std::uint64_t seed) {
  Generator g(seed);
  std::vector<CorpusEntry> out;
  out.reserve(count);
  while (out.size() < count)
    out.push_back(g.entry());
  return out;
}

bool oracle_eval(const Formula& f, std::map<std::string, GaloisField::Elem> assignment, const GaloisField& field) {
  using K = Formula::Kind;
  switch (f.kind()) {
  case K::truth:
    return true;
  case K::falsity:
    return false;
  case K::equal:
  case K::not_equal: {
    bool eq = eval_term(field, f.lhs_term(), assignment) == eval_term(field, f.rhs_term(), assignment);
    return f.kind() == K::equal ? eq : !eq;
  }
  case K::conj:
    return oracle_eval(f.left(), assignment, field) && oracle_eval(f.right(), assignment, field);
  case K::disj:
    return oracle_eval(f.left(), assignment, field) || oracle_eval(f.right(), assignment, field);
  case K::negation:
    return !oracle_eval(f.body(), assignment, field);
  case K::exists: {
    const auto& vars = f.bound();
    std::vector<GaloisField::Elem> vals(vars.size(), 0);
    for (;;) {
      for (std::size_t i = 0; i < vars.size(); ++i)
        assignment[vars[i]] = vals[i];
      if (oracle_eval(f.body(), assignment, field))
        return true;
      std::size_t i = 0;
      while (i < vals.size() && ++vals[i] == field.order())
        vals[i++] = 0;
      if (i == vals.size())
        return false;
    }
  }
  case K::less:
    break;
  }
  throw std::logic_error("oracle cannot evaluate order atoms");
}

std::vector<std::vector<GaloisField::Elem>> oracle_set(const Formula& f, const std::vector<std::string>& vars,
                                                       const GaloisField& field) {
  std::vector<std::vector<GaloisField::Elem>> out;
  std::vector<GaloisField::Elem> vals(vars.size(), 0);
  for (;;) {
    std::map<std::string, GaloisField::Elem> a;
    for (std::size_t i = 0; i < vars.size(); ++i)
      a[vars[i]] = vals[i];
    if (oracle_eval(f, a, field))
      out.push_back(vals);
    // Last variable fastest, matching the library's enumeration order.
    std::size_t i = vals.size();
    while (i > 0 && ++vals[i - 1] == field.order())
      vals[--i] = 0;
    if (i == 0)
      return out;
  }
}

} // namespace erank::testing
