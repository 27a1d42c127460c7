// Semantics over infinite fields: direct evaluation of quantifier-free
// formulas, and bounded witness search over F_q(t).

#ifndef ERANK_RATFUNC_EVAL_HPP
#define ERANK_RATFUNC_EVAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "erank/formula.hpp"
#include "erank/profile.hpp"

namespace erank {

// Truth of a quantifier-free formula at an assignment in `field`.
// Throws InvalidArgumentError on quantifiers, order atoms or unassigned variables.
template <class F>
bool holds(const F& field, const Formula& f, const std::map<std::string, typename F::Elem>& assignment) {
  using K = Formula::Kind;
  switch (f.kind()) {
  case K::truth:
    return true;
  case K::falsity:
    return false;
  case K::equal:
    return field.equal(eval_term(field, f.lhs_term(), assignment), eval_term(field, f.rhs_term(), assignment));
  case K::not_equal:
    return !field.equal(eval_term(field, f.lhs_term(), assignment), eval_term(field, f.rhs_term(), assignment));
  case K::negation:
    return !holds(field, f.body(), assignment);
  case K::conj:
    return holds(field, f.left(), assignment) && holds(field, f.right(), assignment);
  case K::disj:
    return holds(field, f.left(), assignment) || holds(field, f.right(), assignment);
  case K::less:
    throw InvalidArgumentError("order atoms cannot be evaluated here");
  case K::exists:
    throw InvalidArgumentError("direct evaluation needs a quantifier-free formula");
  }
  return false;
}

// All reduced fractions with max(deg num, deg den) <= bound, ordered by
// (max degree, denominator index, numerator index), where a polynomial's
// index reads its coefficients as base-q digits. Throws CapExceededError past
// max_states().
std::vector<RatFunc> enumerate_ratfuncs(const RatFuncField& field, unsigned bound);

enum class BoundedVerdict { holds, no_witness_up_to_bound };

struct BoundedResult {
  BoundedVerdict verdict = BoundedVerdict::no_witness_up_to_bound;
  std::map<std::string, RatFunc> witness; // bound variables, when found
  std::uint64_t candidates_checked = 0;
};

// Sound one-sided check of an existential formula: searches witnesses for its
// prenex bound variables among enumerate_ratfuncs(bound). Never answers false.
BoundedResult eval_bounded_ratfunc(const Formula& f, const std::map<std::string, RatFunc>& assignment,
                                   const RatFuncField& field, unsigned bound);

const char* to_string(BoundedVerdict v);

} // namespace erank

#endif
