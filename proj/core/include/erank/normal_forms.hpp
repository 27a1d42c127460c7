// Rewriting passes with quantifier accounting.

#ifndef ERANK_NORMAL_FORMS_HPP
#define ERANK_NORMAL_FORMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "erank/formula.hpp"
#include "erank/profile.hpp"

namespace erank {

// E bound . matrix, matrix quantifier-free.
struct PrenexFormula {
  std::vector<std::string> bound;
  Formula matrix;

  std::size_t count() const { return bound.size(); }
  Formula to_formula() const;
  friend bool operator==(const PrenexFormula&, const PrenexFormula&) = default;
};

// Throws NotExistentialError. Quantifier blocks of disjuncts share variables
// left to right (max rule); conjuncts get disjoint blocks (sum rule).
PrenexFormula to_prenex_existential(const Formula& f);
// Reads an already prenex formula (leading exists blocks over a qf matrix)
// without re-sharing anything. Throws InvalidArgumentError otherwise.
PrenexFormula as_prenex(const Formula& f);

PrenexFormula merge_disjunction(const PrenexFormula& a, const PrenexFormula& b);
PrenexFormula merge_conjunction(const PrenexFormula& a, const PrenexFormula& b);

// Drops vacuous bound variables and re-shares the blocks of the top-level
// disjuncts of the matrix.
PrenexFormula merge_pass(const PrenexFormula& f);

struct PositivePrimitiveOptions {
  std::size_t node_limit = 100000;
};

// Matrix becomes a conjunction of equations; at most one quantifier is added.
// Throws CapExceededError when the DNF grows past the node limit.
PrenexFormula to_positive_primitive(const PrenexFormula& f, const PositivePrimitiveOptions& options = {});
bool is_positive_primitive(const Formula& matrix);
// Conjuncts of a positive-primitive matrix as polynomials f with f = 0.
std::vector<Term> pp_equations(const Formula& matrix);

// Folds the equations with the homogenization of g. For finite profiles g is
// checked for roots; elsewhere it is trusted. Throws InvalidArgumentError when
// g is constant or has a root.
PrenexFormula to_single_equation(const PrenexFormula& f, const UnivariatePolynomial& g,
                                 const std::optional<FieldProfile>& profile = std::nullopt);
bool has_root_in(const UnivariatePolynomial& g, const FieldProfile& profile);

// X < Y  ->  E z . (Y - X = z^2 & !(X = Y));  !(X < Y)  ->  E z . X - Y = z^2.
// Without a square-tuple formula every occurrence gets its own quantifier.
// With an E_1 formula psi(u1..un) for n-tuples of squares (caller-certified),
// a quantifier-free input with n order atoms is rewritten over the 2^n sign
// patterns with one shared quantifier. Throws UnsupportedProfileError when the
// profile has no order.
Formula eliminate_order(const Formula& f, const std::optional<FieldProfile>& profile = std::nullopt,
                        const std::optional<Formula>& square_tuple_formula = std::nullopt);

// Negation normal form; negation only on atoms. Throws NotExistentialError for
// a negated quantifier.
Formula to_nnf(const Formula& f);

// Raw number of bound variables, no existential check.
std::size_t raw_quantifier_count(const Formula& f);

struct PassTraceEntry {
  std::string pass;
  std::string anchor;
  std::size_t before = 0;
  std::size_t after = 0;
  std::string scope;
};

struct RankReport {
  std::size_t erk_upper = 0;
  std::size_t perk_upper = 0;
  std::size_t efd_upper = 0;
  std::vector<std::string> assumptions;
  std::vector<PassTraceEntry> pass_trace;
  std::vector<std::string> notes;
  std::string profile;
  Formula input;
  PrenexFormula prenex;   // form counted by erk_upper
  PrenexFormula positive; // form counted by perk_upper
  Formula output;         // result of the last pass
};

// Pass ids: order_elim, prenex, merge, pp, single_eq.
std::vector<std::string> default_pipeline(const Formula& f, const FieldProfile& profile);
// Throws InvalidArgumentError for an unknown pass id and whatever the passes throw.
RankReport rank_report(const Formula& f, const FieldProfile& profile, const std::vector<std::string>& pipeline,
                       const PositivePrimitiveOptions& options = {});

// Quantifier-free formula sum_{a in D} prod_i (1 - (x_i - a_i)^(q-1)) = 1 over
// variables `vars`, defining exactly D in F_q.
Formula qf_interpolation_finite(const std::vector<std::vector<GaloisField::Elem>>& points, const GaloisField& field,
                                const std::vector<std::string>& vars);

} // namespace erank

#endif
