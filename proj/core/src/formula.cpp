#include "erank/formula.hpp"

#include <algorithm>
#include <stdexcept>

#include "erank/errors.hpp"

namespace erank {

namespace {

using Kind = Formula::Kind;

std::shared_ptr<detail::FormulaNode> make_node(Kind kind) {
  auto node = std::make_shared<detail::FormulaNode>();
  node->kind = kind;
  return node;
}

void push_unique(std::vector<std::string>& out, const std::string& name) {
  if (std::find(out.begin(), out.end(), name) == out.end())
    out.push_back(name);
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  auto visit_term = [&](const Term& t) {
    for (const auto& v : term_variables(t))
      if (std::find(bound.begin(), bound.end(), v) == bound.end())
        push_unique(out, v);
  };
  switch (f.kind()) {
  case Kind::truth:
  case Kind::falsity:
    return;
  case Kind::equal:
  case Kind::not_equal:
  case Kind::less:
    visit_term(f.lhs_term());
    visit_term(f.rhs_term());
    return;
  case Kind::conj:
  case Kind::disj:
    collect_free(f.left(), bound, out);
    collect_free(f.right(), bound, out);
    return;
  case Kind::negation:
    collect_free(f.body(), bound, out);
    return;
  case Kind::exists: {
    std::size_t mark = bound.size();
    bound.insert(bound.end(), f.bound().begin(), f.bound().end());
    collect_free(f.body(), bound, out);
    bound.resize(mark);
    return;
  }
  }
}

void collect_constants(const Formula& f, std::vector<std::string>& out) {
  switch (f.kind()) {
  case Kind::truth:
  case Kind::falsity:
    return;
  case Kind::equal:
  case Kind::not_equal:
  case Kind::less:
    for (const auto& c : term_constants(f.lhs_term()))
      push_unique(out, c);
    for (const auto& c : term_constants(f.rhs_term()))
      push_unique(out, c);
    return;
  case Kind::conj:
  case Kind::disj:
    collect_constants(f.left(), out);
    collect_constants(f.right(), out);
    return;
  case Kind::negation:
  case Kind::exists:
    collect_constants(f.body(), out);
    return;
  }
}

void collect_all_names(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
  case Kind::truth:
  case Kind::falsity:
    return;
  case Kind::equal:
  case Kind::not_equal:
  case Kind::less:
    for (const auto& v : term_variables(f.lhs_term()))
      out.insert(v);
    for (const auto& v : term_variables(f.rhs_term()))
      out.insert(v);
    return;
  case Kind::conj:
  case Kind::disj:
    collect_all_names(f.left(), out);
    collect_all_names(f.right(), out);
    return;
  case Kind::negation:
    collect_all_names(f.body(), out);
    return;
  case Kind::exists:
    out.insert(f.bound().begin(), f.bound().end());
    collect_all_names(f.body(), out);
    return;
  }
}

std::size_t count_bound(const Formula& f) {
  switch (f.kind()) {
  case Kind::conj:
  case Kind::disj:
    return count_bound(f.left()) + count_bound(f.right());
  case Kind::negation:
    return count_bound(f.body());
  case Kind::exists:
    return f.bound().size() + count_bound(f.body());
  default:
    return 0;
  }
}

Term rebuild(const Term& t, const Term& l, const Term& r) {
  switch (t.kind()) {
  case Term::Kind::sum:
    return Term::sum(l, r);
  case Term::Kind::difference:
    return Term::difference(l, r);
  case Term::Kind::product:
    return Term::product(l, r);
  default:
    throw std::logic_error("rebuild on a non-binary term");
  }
}

template <class LeafFn>
Term map_leaves(const Term& t, const LeafFn& leaf) {
  switch (t.kind()) {
  case Term::Kind::variable:
  case Term::Kind::constant:
  case Term::Kind::literal:
    return leaf(t);
  case Term::Kind::power: {
    Term b = map_leaves(t.base(), leaf);
    return b.identity() == t.base().identity() ? t : Term::power(b, t.exponent());
  }
  default: {
    Term l = map_leaves(t.lhs(), leaf);
    Term r = map_leaves(t.rhs(), leaf);
    if (l.identity() == t.lhs().identity() && r.identity() == t.rhs().identity())
      return t;
    return rebuild(t, l, r);
  }
  }
}

// Applies `term_fn` to every atom's terms, keeping the formula skeleton.
template <class TermFn>
Formula map_atoms(const Formula& f, const TermFn& term_fn) {
  switch (f.kind()) {
  case Kind::truth:
  case Kind::falsity:
    return f;
  case Kind::equal:
    return Formula::equal(term_fn(f.lhs_term()), term_fn(f.rhs_term()));
  case Kind::not_equal:
    return Formula::not_equal(term_fn(f.lhs_term()), term_fn(f.rhs_term()));
  case Kind::less:
    return Formula::less(term_fn(f.lhs_term()), term_fn(f.rhs_term()));
  case Kind::conj:
    return Formula::conj(map_atoms(f.left(), term_fn), map_atoms(f.right(), term_fn));
  case Kind::disj:
    return Formula::disj(map_atoms(f.left(), term_fn), map_atoms(f.right(), term_fn));
  case Kind::negation:
    return Formula::negation(map_atoms(f.body(), term_fn));
  case Kind::exists:
    return Formula::exists(f.bound(), map_atoms(f.body(), term_fn));
  }
  throw std::logic_error("unreachable");
}

} // namespace

Formula Formula::truth() { return Formula(make_node(Kind::truth)); }
Formula Formula::falsity() { return Formula(make_node(Kind::falsity)); }

Formula Formula::equal(Term lhs, Term rhs) {
  auto node = make_node(Kind::equal);
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return Formula(std::move(node));
}

Formula Formula::not_equal(Term lhs, Term rhs) {
  auto node = make_node(Kind::not_equal);
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return Formula(std::move(node));
}

Formula Formula::less(Term lhs, Term rhs) {
  auto node = make_node(Kind::less);
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return Formula(std::move(node));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  auto node = make_node(Kind::conj);
  node->left = std::move(lhs);
  node->right = std::move(rhs);
  return Formula(std::move(node));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  auto node = make_node(Kind::disj);
  node->left = std::move(lhs);
  node->right = std::move(rhs);
  return Formula(std::move(node));
}

Formula Formula::negation(Formula operand) {
  auto node = make_node(Kind::negation);
  node->left = std::move(operand);
  return Formula(std::move(node));
}

Formula Formula::exists(std::vector<std::string> vars, Formula body) {
  if (vars.empty())
    throw InvalidArgumentError("quantifier block without variables");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!is_identifier(vars[i]))
      throw InvalidArgumentError("invalid bound variable name '" + vars[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (vars[i] == vars[j])
        throw InvalidArgumentError("variable '" + vars[i] + "' bound twice in one quantifier block");
  }
  auto node = make_node(Kind::exists);
  node->vars = std::move(vars);
  node->left = std::move(body);
  return Formula(std::move(node));
}

Formula::Kind Formula::kind() const {
  if (!node_)
    throw std::logic_error("use of an empty Formula");
  return node_->kind;
}

bool Formula::is_atom() const {
  Kind k = kind();
  return k == Kind::equal || k == Kind::not_equal || k == Kind::less || k == Kind::truth || k == Kind::falsity;
}

const Term& Formula::lhs_term() const {
  Kind k = kind();
  if (k != Kind::equal && k != Kind::not_equal && k != Kind::less)
    throw std::logic_error("lhs_term on a non-relation");
  return node_->lhs;
}

const Term& Formula::rhs_term() const {
  lhs_term();
  return node_->rhs;
}

const Formula& Formula::left() const {
  Kind k = kind();
  if (k != Kind::conj && k != Kind::disj)
    throw std::logic_error("left on a non-connective");
  return node_->left;
}

const Formula& Formula::right() const {
  left();
  return node_->right;
}

const Formula& Formula::body() const {
  Kind k = kind();
  if (k != Kind::negation && k != Kind::exists)
    throw std::logic_error("body on a formula without one");
  return node_->left;
}

const std::vector<std::string>& Formula::bound() const {
  if (kind() != Kind::exists)
    throw std::logic_error("bound on a non-quantifier");
  return node_->vars;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_)
    return true;
  if (!a.node_ || !b.node_ || a.kind() != b.kind())
    return false;
  switch (a.kind()) {
  case Kind::truth:
  case Kind::falsity:
    return true;
  case Kind::equal:
  case Kind::not_equal:
  case Kind::less:
    return a.lhs_term() == b.lhs_term() && a.rhs_term() == b.rhs_term();
  case Kind::conj:
  case Kind::disj:
    return a.left() == b.left() && a.right() == b.right();
  case Kind::negation:
    return a.body() == b.body();
  case Kind::exists:
    return a.bound() == b.bound() && a.body() == b.body();
  }
  return false;
}

Formula conj_of(const std::vector<Formula>& parts) {
  if (parts.empty())
    return Formula::truth();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i)
    acc = Formula::conj(acc, parts[i]);
  return acc;
}

Formula disj_of(const std::vector<Formula>& parts) {
  if (parts.empty())
    return Formula::falsity();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i)
    acc = Formula::disj(acc, parts[i]);
  return acc;
}

bool is_existential(const Formula& f) {
  switch (f.kind()) {
  case Kind::less:
    return false;
  case Kind::truth:
  case Kind::falsity:
  case Kind::equal:
  case Kind::not_equal:
    return true;
  case Kind::conj:
  case Kind::disj:
    return is_existential(f.left()) && is_existential(f.right());
  case Kind::negation:
    return f.body().is_atom() && f.body().kind() != Kind::less;
  case Kind::exists:
    return is_existential(f.body());
  }
  return false;
}

bool is_quantifier_free(const Formula& f) {
  switch (f.kind()) {
  case Kind::conj:
  case Kind::disj:
    return is_quantifier_free(f.left()) && is_quantifier_free(f.right());
  case Kind::negation:
    return is_quantifier_free(f.body());
  case Kind::exists:
    return false;
  default:
    return true;
  }
}

bool contains_order(const Formula& f) {
  switch (f.kind()) {
  case Kind::less:
    return true;
  case Kind::conj:
  case Kind::disj:
    return contains_order(f.left()) || contains_order(f.right());
  case Kind::negation:
  case Kind::exists:
    return contains_order(f.body());
  default:
    return false;
  }
}

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::vector<std::string> formula_constants(const Formula& f) {
  std::vector<std::string> out;
  collect_constants(f, out);
  return out;
}

std::set<std::string> all_variable_names(const Formula& f) {
  std::set<std::string> out;
  collect_all_names(f, out);
  return out;
}

std::size_t quantifier_count(const Formula& f) {
  if (!is_existential(f))
    throw NotExistentialError("quantifier_count needs an existential formula");
  return count_bound(f);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.contains(base))
    return base;
  for (std::size_t i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!taken.contains(candidate))
      return candidate;
  }
}

Term substitute(const Term& t, const std::map<std::string, Term>& map) {
  if (map.empty())
    return t;
  return map_leaves(t, [&](const Term& leaf) {
    if (leaf.kind() == Term::Kind::variable) {
      auto it = map.find(leaf.name());
      if (it != map.end())
        return it->second;
    }
    return leaf;
  });
}

Formula substitute(const Formula& f, const std::map<std::string, Term>& map) {
  if (map.empty())
    return f;
  switch (f.kind()) {
  case Kind::truth:
  case Kind::falsity:
    return f;
  case Kind::equal:
    return Formula::equal(substitute(f.lhs_term(), map), substitute(f.rhs_term(), map));
  case Kind::not_equal:
    return Formula::not_equal(substitute(f.lhs_term(), map), substitute(f.rhs_term(), map));
  case Kind::less:
    return Formula::less(substitute(f.lhs_term(), map), substitute(f.rhs_term(), map));
  case Kind::conj:
    return Formula::conj(substitute(f.left(), map), substitute(f.right(), map));
  case Kind::disj:
    return Formula::disj(substitute(f.left(), map), substitute(f.right(), map));
  case Kind::negation:
    return Formula::negation(substitute(f.body(), map));
  case Kind::exists: {
    std::map<std::string, Term> inner;
    auto body_free = free_variables(f.body());
    for (const auto& [name, term] : map) {
      bool shadowed = std::find(f.bound().begin(), f.bound().end(), name) != f.bound().end();
      bool occurs = std::find(body_free.begin(), body_free.end(), name) != body_free.end();
      if (!shadowed && occurs)
        inner.emplace(name, term);
    }
    if (inner.empty())
      return f;
    std::set<std::string> incoming;
    for (const auto& [name, term] : inner)
      for (const auto& v : term_variables(term))
        incoming.insert(v);
    std::set<std::string> taken = all_variable_names(f.body());
    taken.insert(incoming.begin(), incoming.end());
    for (const auto& [name, term] : inner)
      taken.insert(name);
    std::vector<std::string> vars = f.bound();
    std::map<std::string, Term> renaming;
    for (auto& v : vars) {
      if (incoming.contains(v)) {
        std::string fresh = fresh_name(v, taken);
        taken.insert(fresh);
        renaming.emplace(v, Term::var(fresh));
        v = fresh;
      }
    }
    Formula body = renaming.empty() ? f.body() : substitute(f.body(), renaming);
    return Formula::exists(std::move(vars), substitute(body, inner));
  }
  }
  throw std::logic_error("unreachable");
}

Term substitute_constants(const Term& t, const std::map<std::string, Term>& map) {
  if (map.empty())
    return t;
  return map_leaves(t, [&](const Term& leaf) {
    if (leaf.kind() == Term::Kind::constant) {
      auto it = map.find(leaf.name());
      if (it != map.end())
        return it->second;
    }
    return leaf;
  });
}

Formula substitute_constants(const Formula& f, const std::map<std::string, Term>& map) {
  // Replacement terms may mention variables; callers use this for inverse
  // promotion where those variables are not bound anywhere in f.
  return map_atoms(f, [&](const Term& t) { return substitute_constants(t, map); });
}

Promotion promote_free_variables(const Formula& f, const std::vector<std::string>& vars) {
  auto free = free_variables(f);
  std::set<std::string> taken;
  for (const auto& c : formula_constants(f))
    taken.insert(c);
  std::map<std::string, Term> to_constants;
  Promotion out;
  for (const auto& v : vars) {
    if (std::find(free.begin(), free.end(), v) == free.end())
      throw InvalidArgumentError("cannot promote '" + v + "': not a free variable");
    if (out.constants.contains(v))
      continue;
    std::string symbol = fresh_name(v, taken);
    taken.insert(symbol);
    out.constants.emplace(v, symbol);
    to_constants.emplace(v, Term::constant(symbol));
  }
  out.formula = substitute(f, to_constants);
  return out;
}

Formula promote_free_vars(const Formula& f, const std::vector<std::string>& vars) {
  return promote_free_variables(f, vars).formula;
}

namespace {

struct Canonicalizer {
  std::set<std::string> avoid;
  std::size_t next = 1;

  std::string next_name() {
    for (;;) {
      std::string name = "y" + std::to_string(next++);
      if (!avoid.contains(name))
        return name;
    }
  }

  // env maps bound names in scope to their new names; every binder gets a
  // new name distinct from all free names, so no capture is possible.
  Formula run(const Formula& f, const std::map<std::string, Term>& env) {
    switch (f.kind()) {
    case Kind::conj:
      return Formula::conj(run(f.left(), env), run(f.right(), env));
    case Kind::disj:
      return Formula::disj(run(f.left(), env), run(f.right(), env));
    case Kind::negation:
      return Formula::negation(run(f.body(), env));
    case Kind::exists: {
      std::vector<std::string> names;
      std::map<std::string, Term> inner = env;
      for (const auto& v : f.bound()) {
        std::string fresh = next_name();
        names.push_back(fresh);
        inner.insert_or_assign(v, Term::var(fresh));
      }
      Formula body = run(f.body(), inner);
      if (body.kind() == Kind::exists) {
        names.insert(names.end(), body.bound().begin(), body.bound().end());
        return Formula::exists(std::move(names), body.body());
      }
      return Formula::exists(std::move(names), body);
    }
    default:
      return map_atoms(f, [&](const Term& t) { return substitute(t, env); });
    }
  }
};

} // namespace

Formula canonical_binders(const Formula& f) {
  Canonicalizer c;
  for (const auto& v : free_variables(f))
    c.avoid.insert(v);
  return c.run(f, {});
}

Formula simplify_constants(const Formula& f) {
  switch (f.kind()) {
  case Kind::conj: {
    Formula l = simplify_constants(f.left());
    Formula r = simplify_constants(f.right());
    if (l.kind() == Kind::falsity || r.kind() == Kind::falsity)
      return Formula::falsity();
    if (l.kind() == Kind::truth)
      return r;
    if (r.kind() == Kind::truth)
      return l;
    return Formula::conj(l, r);
  }
  case Kind::disj: {
    Formula l = simplify_constants(f.left());
    Formula r = simplify_constants(f.right());
    if (l.kind() == Kind::truth || r.kind() == Kind::truth)
      return Formula::truth();
    if (l.kind() == Kind::falsity)
      return r;
    if (r.kind() == Kind::falsity)
      return l;
    return Formula::disj(l, r);
  }
  case Kind::negation: {
    Formula b = simplify_constants(f.body());
    if (b.kind() == Kind::truth)
      return Formula::falsity();
    if (b.kind() == Kind::falsity)
      return Formula::truth();
    return Formula::negation(b);
  }
  case Kind::exists:
    return Formula::exists(f.bound(), simplify_constants(f.body()));
  default:
    return f;
  }
}

} // namespace erank
