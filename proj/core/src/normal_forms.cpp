#include "erank/normal_forms.hpp"

#include <algorithm>

#include "erank/errors.hpp"

namespace erank {

using Kind = Formula::Kind;

namespace {

std::set<std::string> free_set(const PrenexFormula& p) {
  auto v = free_variables(p.to_formula());
  return {v.begin(), v.end()};
}

std::map<std::string, Term> renaming(const std::vector<std::string>& from, const std::vector<std::string>& to) {
  std::map<std::string, Term> m;
  for (std::size_t i = 0; i < from.size(); ++i)
    if (from[i] != to[i])
      m.emplace(from[i], Term::var(to[i]));
  return m;
}

Formula rename_matrix(const Formula& matrix, const std::vector<std::string>& from, const std::vector<std::string>& to) {
  auto m = renaming(from, to);
  return m.empty() ? matrix : substitute(matrix, m);
}

// Equation f = 0 read off an atom lhs = rhs.
Term equation_term(const Term& lhs, const Term& rhs) {
  if (rhs.is_literal(0))
    return lhs;
  if (lhs.is_literal(0))
    return rhs;
  return lhs - rhs;
}

void flatten(const Formula& f, Kind kind, std::vector<Formula>& out) {
  if (f.kind() == kind) {
    flatten(f.left(), kind, out);
    flatten(f.right(), kind, out);
  } else {
    out.push_back(f);
  }
}

PrenexFormula prenex_rec(const Formula& f) {
  switch (f.kind()) {
  case Kind::truth:
  case Kind::falsity:
  case Kind::equal:
  case Kind::not_equal:
    return {{}, f};
  case Kind::less:
    throw NotExistentialError("order atom in an existential-only pass; run order_elim first");
  case Kind::negation:
    if (!f.body().is_atom() || f.body().kind() == Kind::less)
      throw NotExistentialError("negation of a compound formula is not existential");
    return {{}, f};
  case Kind::conj:
    return merge_conjunction(prenex_rec(f.left()), prenex_rec(f.right()));
  case Kind::disj:
    return merge_disjunction(prenex_rec(f.left()), prenex_rec(f.right()));
  case Kind::exists: {
    PrenexFormula inner = prenex_rec(f.body());
    const auto& outer = f.bound();
    std::set<std::string> taken(outer.begin(), outer.end());
    for (const auto& v : free_set(inner))
      taken.insert(v);
    std::vector<std::string> names;
    for (const auto& b : inner.bound) {
      std::string n = taken.count(b) ? fresh_name(b, taken) : b;
      taken.insert(n);
      names.push_back(n);
    }
    PrenexFormula out;
    out.bound = outer;
    out.bound.insert(out.bound.end(), names.begin(), names.end());
    out.matrix = rename_matrix(inner.matrix, inner.bound, names);
    return out;
  }
  }
  throw std::logic_error("unreachable formula kind");
}

// DNF as disjuncts of literals.
using Clause = std::vector<Formula>;

std::vector<Clause> dnf(const Formula& f, std::size_t limit) {
  switch (f.kind()) {
  case Kind::truth:
    return {Clause{}};
  case Kind::falsity:
    return {};
  case Kind::disj: {
    auto l = dnf(f.left(), limit);
    auto r = dnf(f.right(), limit);
    l.insert(l.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
    return l;
  }
  case Kind::conj: {
    auto l = dnf(f.left(), limit);
    auto r = dnf(f.right(), limit);
    std::vector<Clause> out;
    std::size_t nodes = 0;
    for (const auto& a : l) {
      for (const auto& b : r) {
        Clause c = a;
        for (const auto& lit : b)
          if (std::find(c.begin(), c.end(), lit) == c.end())
            c.push_back(lit);
        nodes += c.size() + 1;
        if (nodes > limit)
          throw CapExceededError("DNF exceeds the node limit of " + std::to_string(limit));
        out.push_back(std::move(c));
      }
    }
    return out;
  }
  default:
    return {Clause{f}};
  }
}

} // namespace

Formula PrenexFormula::to_formula() const { return bound.empty() ? matrix : Formula::exists(bound, matrix); }

PrenexFormula to_prenex_existential(const Formula& f) {
  if (!is_existential(f))
    throw NotExistentialError("formula is not existential");
  return prenex_rec(f);
}

PrenexFormula as_prenex(const Formula& f) {
  PrenexFormula out;
  Formula cur = f;
  std::set<std::string> seen;
  while (cur.kind() == Kind::exists) {
    std::vector<std::string> vars = cur.bound();
    Formula body = cur.body();
    // An inner block rebinding a name shadows the outer one.
    std::map<std::string, Term> ren;
    std::set<std::string> taken = all_variable_names(f);
    for (auto& v : vars) {
      if (seen.count(v)) {
        std::string n = fresh_name(v, taken);
        taken.insert(n);
        ren.emplace(v, Term::var(n));
        v = n;
      }
      seen.insert(v);
    }
    if (!ren.empty())
      body = substitute(body, ren);
    out.bound.insert(out.bound.end(), vars.begin(), vars.end());
    cur = body;
  }
  if (!is_quantifier_free(cur))
    throw InvalidArgumentError("formula is not in prenex form");
  out.matrix = cur;
  return out;
}

PrenexFormula merge_disjunction(const PrenexFormula& a, const PrenexFormula& b) {
  if (a.matrix.kind() == Kind::falsity)
    return b;
  if (b.matrix.kind() == Kind::falsity)
    return a;
  std::set<std::string> frees = free_set(a);
  for (const auto& v : free_set(b))
    frees.insert(v);
  const std::size_t m = std::max(a.count(), b.count());
  std::vector<std::string> names;
  std::set<std::string> used;
  for (std::size_t i = 0; i < m; ++i) {
    std::string pick;
    for (const auto* side : {&a, &b}) {
      if (i < side->count() && !frees.count(side->bound[i]) && !used.count(side->bound[i])) {
        pick = side->bound[i];
        break;
      }
    }
    if (pick.empty()) {
      std::set<std::string> taken = frees;
      taken.insert(used.begin(), used.end());
      pick = fresh_name(i < a.count() ? a.bound[i] : b.bound[i], taken);
    }
    used.insert(pick);
    names.push_back(pick);
  }
  std::vector<std::string> an(names.begin(), names.begin() + static_cast<long>(a.count()));
  std::vector<std::string> bn(names.begin(), names.begin() + static_cast<long>(b.count()));
  return {names, Formula::disj(rename_matrix(a.matrix, a.bound, an), rename_matrix(b.matrix, b.bound, bn))};
}

PrenexFormula merge_conjunction(const PrenexFormula& a, const PrenexFormula& b) {
  std::set<std::string> frees = free_set(a);
  for (const auto& v : free_set(b))
    frees.insert(v);
  std::set<std::string> used;
  auto assign = [&](const std::vector<std::string>& vars) {
    std::vector<std::string> out;
    for (const auto& v : vars) {
      std::string pick = v;
      if (frees.count(v) || used.count(v)) {
        std::set<std::string> taken = frees;
        taken.insert(used.begin(), used.end());
        for (const auto& w : a.bound)
          taken.insert(w);
        for (const auto& w : b.bound)
          taken.insert(w);
        pick = fresh_name(v, taken);
      }
      used.insert(pick);
      out.push_back(pick);
    }
    return out;
  };
  auto an = assign(a.bound);
  auto bn = assign(b.bound);
  PrenexFormula out;
  out.bound = an;
  out.bound.insert(out.bound.end(), bn.begin(), bn.end());
  out.matrix = Formula::conj(rename_matrix(a.matrix, a.bound, an), rename_matrix(b.matrix, b.bound, bn));
  return out;
}

PrenexFormula merge_pass(const PrenexFormula& f) {
  std::vector<Formula> parts;
  flatten(f.matrix, Kind::disj, parts);
  PrenexFormula acc{{}, Formula::falsity()};
  bool first = true;
  for (const auto& d : parts) {
    auto fv = free_variables(d);
    std::set<std::string> occurs(fv.begin(), fv.end());
    PrenexFormula piece;
    for (const auto& b : f.bound)
      if (occurs.count(b))
        piece.bound.push_back(b);
    piece.matrix = d;
    acc = first ? piece : merge_disjunction(acc, piece);
    first = false;
  }
  return acc;
}

bool is_positive_primitive(const Formula& matrix) {
  switch (matrix.kind()) {
  case Kind::truth:
  case Kind::falsity:
  case Kind::equal:
    return true;
  case Kind::conj:
    return is_positive_primitive(matrix.left()) && is_positive_primitive(matrix.right());
  default:
    return false;
  }
}

std::vector<Term> pp_equations(const Formula& matrix) {
  if (!is_positive_primitive(matrix))
    throw InvalidArgumentError("matrix is not a conjunction of equations");
  std::vector<Formula> parts;
  flatten(matrix, Kind::conj, parts);
  std::vector<Term> out;
  for (const auto& p : parts) {
    if (p.kind() == Kind::equal)
      out.push_back(equation_term(p.lhs_term(), p.rhs_term()));
    else if (p.kind() == Kind::falsity)
      out.push_back(Term::literal(1));
  }
  return out;
}

Formula to_nnf(const Formula& f) {
  struct Rec {
    Formula operator()(const Formula& g, bool positive) const {
      switch (g.kind()) {
      case Kind::truth:
        return positive ? g : Formula::falsity();
      case Kind::falsity:
        return positive ? g : Formula::truth();
      case Kind::equal:
        return positive ? g : Formula::not_equal(g.lhs_term(), g.rhs_term());
      case Kind::not_equal:
        return positive ? g : Formula::equal(g.lhs_term(), g.rhs_term());
      case Kind::less:
        return positive ? g : Formula::negation(g);
      case Kind::negation:
        return (*this)(g.body(), !positive);
      case Kind::conj:
        return positive ? Formula::conj((*this)(g.left(), true), (*this)(g.right(), true))
                        : Formula::disj((*this)(g.left(), false), (*this)(g.right(), false));
      case Kind::disj:
        return positive ? Formula::disj((*this)(g.left(), true), (*this)(g.right(), true))
                        : Formula::conj((*this)(g.left(), false), (*this)(g.right(), false));
      case Kind::exists:
        if (!positive)
          throw NotExistentialError("negated quantifier");
        return Formula::exists(g.bound(), (*this)(g.body(), true));
      }
      throw std::logic_error("unreachable formula kind");
    }
  };
  return Rec{}(f, true);
}

PrenexFormula to_positive_primitive(const PrenexFormula& f, const PositivePrimitiveOptions& options) {
  if (is_positive_primitive(f.matrix))
    return f;
  Formula nnf = to_nnf(f.matrix);
  auto clauses = dnf(nnf, options.node_limit);

  struct Disjunct {
    std::vector<Formula> atoms; // equations as written
    std::vector<Term> eqs;      // same, as f with f = 0
  };
  std::vector<Disjunct> disjuncts;
  bool needs_inverse = false;
  std::vector<std::vector<Term>> neqs;
  for (const auto& clause : clauses) {
    Disjunct d;
    std::vector<Term> ne;
    bool dead = false;
    for (const auto& lit : clause) {
      switch (lit.kind()) {
      case Kind::equal:
        d.atoms.push_back(lit);
        d.eqs.push_back(equation_term(lit.lhs_term(), lit.rhs_term()));
        break;
      case Kind::not_equal:
        ne.push_back(equation_term(lit.lhs_term(), lit.rhs_term()));
        break;
      case Kind::falsity:
        dead = true;
        break;
      case Kind::truth:
        break;
      default:
        throw NotExistentialError("order atom in positive-primitive conversion");
      }
    }
    if (dead)
      continue;
    if (d.atoms.empty() && ne.empty())
      return {f.bound, Formula::truth()};
    needs_inverse = needs_inverse || !ne.empty();
    disjuncts.push_back(std::move(d));
    neqs.push_back(std::move(ne));
  }

  PrenexFormula out;
  out.bound = f.bound;
  if (disjuncts.empty()) {
    out.matrix = Formula::equal(Term::literal(1), Term::literal(0));
    return out;
  }
  if (needs_inverse) {
    // g != 0 iff g*z = 1 for some z; one z serves every disjunct.
    std::string z = fresh_name("z", all_variable_names(f.to_formula()));
    out.bound.push_back(z);
    for (std::size_t k = 0; k < disjuncts.size(); ++k) {
      if (neqs[k].empty())
        continue;
      Term g = product_of(neqs[k]) * Term::var(z) - Term::literal(1);
      disjuncts[k].atoms.push_back(Formula::equal(g, Term::literal(0)));
      disjuncts[k].eqs.push_back(g);
    }
  }
  if (disjuncts.size() == 1) {
    out.matrix = conj_of(disjuncts[0].atoms);
    return out;
  }
  // (A1 & ... ) | (B1 & ...) over a domain: every product Ai*Bj vanishes.
  std::size_t total = 1;
  for (const auto& d : disjuncts) {
    total *= d.eqs.size();
    if (total > options.node_limit)
      throw CapExceededError("product distribution exceeds the node limit of " + std::to_string(options.node_limit));
  }
  std::vector<Formula> eqs;
  std::vector<std::size_t> idx(disjuncts.size(), 0);
  for (;;) {
    std::vector<Term> factors;
    for (std::size_t k = 0; k < disjuncts.size(); ++k)
      factors.push_back(disjuncts[k].eqs[idx[k]]);
    eqs.push_back(Formula::equal(product_of(factors), Term::literal(0)));
    std::size_t k = disjuncts.size();
    while (k-- > 0) {
      if (++idx[k] < disjuncts[k].eqs.size())
        break;
      idx[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1))
      break;
  }
  out.matrix = conj_of(eqs);
  return out;
}

bool has_root_in(const UnivariatePolynomial& g, const FieldProfile& profile) {
  if (profile.kind != FieldKind::finite)
    throw UnsupportedProfileError("root check needs a finite profile");
  const GaloisField& F = *profile.field;
  std::vector<GaloisField::Elem> c;
  for (const auto& t : g.coefficients)
    c.push_back(eval_term(F, t, {}));
  for (GaloisField::Elem z = 0; z < F.order(); ++z) {
    GaloisField::Elem acc = 0;
    for (std::size_t i = c.size(); i-- > 0;)
      acc = F.add(F.mul(acc, z), c[i]);
    if (acc == 0)
      return true;
  }
  return false;
}

PrenexFormula to_single_equation(const PrenexFormula& f, const UnivariatePolynomial& g,
                                 const std::optional<FieldProfile>& profile) {
  if (g.coefficients.size() < 2 || g.coefficients.back().is_literal(0))
    throw InvalidArgumentError("homogenization needs a nonconstant g with nonzero leading coefficient");
  if (profile && profile->kind == FieldKind::finite && has_root_in(g, *profile))
    throw InvalidArgumentError("g = " + g.format() + " has a root in " + profile->name());
  auto eqs = pp_equations(f.matrix);
  if (eqs.size() <= 1)
    return f;
  Term acc = eqs[0];
  for (std::size_t i = 1; i < eqs.size(); ++i)
    acc = g.homogenized(eqs[i], acc);
  return {f.bound, Formula::equal(acc, Term::literal(0))};
}

std::size_t raw_quantifier_count(const Formula& f) {
  switch (f.kind()) {
  case Kind::conj:
  case Kind::disj:
    return raw_quantifier_count(f.left()) + raw_quantifier_count(f.right());
  case Kind::negation:
    return raw_quantifier_count(f.body());
  case Kind::exists:
    return f.bound().size() + raw_quantifier_count(f.body());
  default:
    return 0;
  }
}

namespace {

Formula positive_less(const Term& x, const Term& y, const std::string& z) {
  return Formula::exists({z}, Formula::conj(Formula::equal(y - x, pow(Term::var(z), 2)),
                                            Formula::negation(Formula::equal(x, y))));
}

Formula negative_less(const Term& x, const Term& y, const std::string& z) {
  return Formula::exists({z}, Formula::equal(x - y, pow(Term::var(z), 2)));
}

Formula replace_order(const Formula& f, std::set<std::string>& taken) {
  switch (f.kind()) {
  case Kind::less: {
    std::string z = fresh_name("z", taken);
    taken.insert(z);
    return positive_less(f.lhs_term(), f.rhs_term(), z);
  }
  case Kind::negation:
    if (f.body().kind() == Kind::less) {
      std::string z = fresh_name("z", taken);
      taken.insert(z);
      return negative_less(f.body().lhs_term(), f.body().rhs_term(), z);
    }
    return f;
  case Kind::conj:
    return Formula::conj(replace_order(f.left(), taken), replace_order(f.right(), taken));
  case Kind::disj:
    return Formula::disj(replace_order(f.left(), taken), replace_order(f.right(), taken));
  case Kind::exists:
    return Formula::exists(f.bound(), replace_order(f.body(), taken));
  default:
    return f;
  }
}

void collect_order_atoms(const Formula& f, std::vector<Formula>& out) {
  switch (f.kind()) {
  case Kind::less:
    if (std::find(out.begin(), out.end(), f) == out.end())
      out.push_back(f);
    return;
  case Kind::negation:
    collect_order_atoms(f.body(), out);
    return;
  case Kind::conj:
  case Kind::disj:
    collect_order_atoms(f.left(), out);
    collect_order_atoms(f.right(), out);
    return;
  default:
    return;
  }
}

Formula assign_order(const Formula& f, const std::vector<Formula>& atoms, const std::vector<bool>& value) {
  switch (f.kind()) {
  case Kind::less: {
    auto i = static_cast<std::size_t>(std::find(atoms.begin(), atoms.end(), f) - atoms.begin());
    return value[i] ? Formula::truth() : Formula::falsity();
  }
  case Kind::negation:
    return Formula::negation(assign_order(f.body(), atoms, value));
  case Kind::conj:
    return Formula::conj(assign_order(f.left(), atoms, value), assign_order(f.right(), atoms, value));
  case Kind::disj:
    return Formula::disj(assign_order(f.left(), atoms, value), assign_order(f.right(), atoms, value));
  default:
    return f;
  }
}

} // namespace

Formula eliminate_order(const Formula& f, const std::optional<FieldProfile>& profile,
                        const std::optional<Formula>& square_tuple_formula) {
  if (!contains_order(f))
    return f;
  if (profile && !profile->has_order)
    throw UnsupportedProfileError("order atoms present but profile " + profile->name() + " has no order");
  std::set<std::string> taken = all_variable_names(f);
  if (!square_tuple_formula)
    return replace_order(to_nnf(f), taken);

  // Leading quantifiers stay; the matrix must be quantifier-free.
  std::vector<std::string> outer;
  Formula matrix = f;
  while (matrix.kind() == Kind::exists) {
    outer.insert(outer.end(), matrix.bound().begin(), matrix.bound().end());
    matrix = matrix.body();
  }
  if (!is_quantifier_free(matrix))
    throw InvalidArgumentError("square-tuple order elimination needs a prenex input");
  std::vector<Formula> atoms;
  collect_order_atoms(matrix, atoms);
  const std::size_t n = atoms.size();
  if (n > 16)
    throw CapExceededError("square-tuple order elimination is capped at 16 order atoms");
  const Formula& psi = *square_tuple_formula;
  auto psi_free = free_variables(psi);
  if (psi_free.size() != n)
    throw InvalidArgumentError("square-tuple formula has " + std::to_string(psi_free.size()) + " free variables, expected " +
                               std::to_string(n));
  std::vector<Formula> branches;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<bool> value(n);
    std::map<std::string, Term> args;
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < n; ++i) {
      value[i] = (mask >> i) & 1u;
      const Term& x = atoms[i].lhs_term();
      const Term& y = atoms[i].rhs_term();
      // X < Y iff Y - X is a nonzero square; otherwise X - Y is a square.
      args.emplace(psi_free[i], value[i] ? y - x : x - y);
      if (value[i])
        parts.push_back(Formula::negation(Formula::equal(x, y)));
    }
    Formula rest = simplify_constants(assign_order(matrix, atoms, value));
    if (rest.kind() == Kind::falsity)
      continue;
    parts.insert(parts.begin(), substitute(psi, args));
    parts.push_back(rest);
    branches.push_back(conj_of(parts));
  }
  Formula body = disj_of(branches);
  Formula out = outer.empty() ? body : Formula::exists(outer, body);
  return to_prenex_existential(out).to_formula();
}

} // namespace erank
