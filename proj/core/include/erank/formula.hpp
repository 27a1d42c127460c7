// Formulas of the language of rings, and the structural utilities the
// rewriting passes are built from.

#ifndef ERANK_FORMULA_HPP
#define ERANK_FORMULA_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "erank/term.hpp"

namespace erank {

namespace detail {
struct FormulaNode;
}

class Formula {
public:
  enum class Kind : std::uint8_t { truth, falsity, equal, not_equal, less, conj, disj, negation, exists };

  static Formula truth();
  static Formula falsity();
  static Formula equal(Term lhs, Term rhs);
  static Formula not_equal(Term lhs, Term rhs);
  static Formula less(Term lhs, Term rhs);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula negation(Formula operand);
  // Throws InvalidArgumentError for an empty or repeating variable list.
  static Formula exists(std::vector<std::string> vars, Formula body);

  Formula() = default;
  bool valid() const { return node_ != nullptr; }

  Kind kind() const;
  bool is_atom() const;

  // equal / not_equal / less
  const Term& lhs_term() const;
  const Term& rhs_term() const;
  // conj / disj
  const Formula& left() const;
  const Formula& right() const;
  // negation operand, or exists body
  const Formula& body() const;
  const std::vector<std::string>& bound() const;

  const void* identity() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::FormulaNode> node_;
};

namespace detail {
struct FormulaNode {
  Formula::Kind kind;
  Term lhs, rhs;
  Formula left, right;
  std::vector<std::string> vars;
};
} // namespace detail

Formula conj_of(const std::vector<Formula>& parts);
Formula disj_of(const std::vector<Formula>& parts);

// Existential: no `<` anywhere, every negation applied to an atom.
bool is_existential(const Formula& f);
bool is_quantifier_free(const Formula& f);
bool contains_order(const Formula& f);

std::vector<std::string> free_variables(const Formula& f);
std::vector<std::string> formula_constants(const Formula& f);
// Every variable name that occurs, bound or free.
std::set<std::string> all_variable_names(const Formula& f);

// Total number of bound variables. Throws NotExistentialError.
std::size_t quantifier_count(const Formula& f);

// First name of the form base, base1, base2, ... not in `taken`.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

Term substitute(const Term& t, const std::map<std::string, Term>& map);
// Simultaneous, capture-avoiding substitution of free variables; binders that
// would capture are renamed.
Formula substitute(const Formula& f, const std::map<std::string, Term>& map);
Term substitute_constants(const Term& t, const std::map<std::string, Term>& map);
Formula substitute_constants(const Formula& f, const std::map<std::string, Term>& map);

struct Promotion {
  Formula formula;
  // variable name -> constant symbol
  std::map<std::string, std::string> constants;
};

// Turns the listed free variables into fresh constant symbols.
Promotion promote_free_variables(const Formula& f, const std::vector<std::string>& vars);
Formula promote_free_vars(const Formula& f, const std::vector<std::string>& vars);

// Flattens directly nested quantifier blocks and renames bound variables to
// y1, y2, ... in order of appearance, skipping names that occur free.
Formula canonical_binders(const Formula& f);

// Atom-level simplification of truth constants (T & x -> x, F | x -> x, ...).
Formula simplify_constants(const Formula& f);

} // namespace erank

#endif
