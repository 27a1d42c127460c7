#include <algorithm>

#include "erank/errors.hpp"
#include "erank/normal_forms.hpp"

namespace erank {

namespace {

const char* const kAnchorPrenex = "shared block for disjuncts (max), disjoint blocks for conjuncts (sum)";
const char* const kAnchorMerge = "vacuous binders dropped, top-level disjuncts re-shared (max)";
const char* const kAnchorPp = "g != 0 iff g*z = 1, one z for all disjuncts; f = 0 | h = 0 iff f*h = 0";
const char* const kAnchorSingle = "fold f = 0 & h = 0 into g*(h, f) = 0 for rootless g";
const char* const kAnchorOrder = "X < Y iff E z (Y - X = z^2 & X != Y); !(X < Y) iff E z (X - Y = z^2)";

void add_assumption(RankReport& r, const std::string& tag) {
  if (std::find(r.assumptions.begin(), r.assumptions.end(), tag) == r.assumptions.end())
    r.assumptions.push_back(tag);
}

} // namespace

std::vector<std::string> default_pipeline(const Formula& f, const FieldProfile& profile) {
  std::vector<std::string> out;
  if (contains_order(f))
    out.push_back("order_elim");
  out.insert(out.end(), {"prenex", "merge", "pp"});
  if (profile.rootless)
    out.push_back("single_eq");
  return out;
}

RankReport rank_report(const Formula& f, const FieldProfile& profile, const std::vector<std::string>& pipeline,
                       const PositivePrimitiveOptions& options) {
  for (const auto& id : pipeline)
    if (id != "order_elim" && id != "prenex" && id != "merge" && id != "pp" && id != "single_eq")
      throw InvalidArgumentError("unknown pass id '" + id + "' (expected order_elim, prenex, merge, pp, single_eq)");

  RankReport r;
  r.profile = profile.name();
  r.input = f;
  Formula cur = f;
  std::optional<PrenexFormula> prenex;
  std::optional<PrenexFormula> best;    // fewest quantifiers among prenex forms
  std::optional<PrenexFormula> best_pp; // fewest among positive-primitive forms

  auto record_prenex = [&](const PrenexFormula& p) {
    if (!best || p.count() < best->count())
      best = p;
    if (is_positive_primitive(p.matrix) && (!best_pp || p.count() < best_pp->count()))
      best_pp = p;
  };
  auto ensure_prenex = [&]() {
    if (!prenex) {
      std::size_t before = raw_quantifier_count(cur);
      prenex = to_prenex_existential(cur);
      r.pass_trace.push_back({"prenex", kAnchorPrenex, before, prenex->count(), "T_fields"});
      add_assumption(r, "T_fields");
      record_prenex(*prenex);
    }
  };

  for (const auto& id : pipeline) {
    if (id == "order_elim") {
      std::size_t before = raw_quantifier_count(prenex ? prenex->to_formula() : cur);
      cur = eliminate_order(prenex ? prenex->to_formula() : cur, profile);
      prenex.reset();
      r.pass_trace.push_back({id, kAnchorOrder, before, raw_quantifier_count(cur), "RCF"});
      add_assumption(r, "RCF");
    } else if (id == "prenex") {
      if (prenex) {
        r.pass_trace.push_back({id, kAnchorPrenex, prenex->count(), prenex->count(), "T_fields"});
        continue;
      }
      ensure_prenex();
    } else if (id == "merge") {
      ensure_prenex();
      std::size_t before = prenex->count();
      prenex = merge_pass(*prenex);
      r.pass_trace.push_back({id, kAnchorMerge, before, prenex->count(), "T_fields"});
      add_assumption(r, "T_fields");
      record_prenex(*prenex);
    } else if (id == "pp") {
      ensure_prenex();
      std::size_t before = prenex->count();
      prenex = to_positive_primitive(*prenex, options);
      r.pass_trace.push_back({id, kAnchorPp, before, prenex->count(), "T_fields"});
      add_assumption(r, "T_fields");
      record_prenex(*prenex);
    } else if (id == "single_eq") {
      ensure_prenex();
      if (!is_positive_primitive(prenex->matrix))
        throw InvalidArgumentError("single_eq needs a positive-primitive matrix; run pp first");
      if (!profile.rootless)
        throw UnsupportedProfileError("profile " + profile.name() + " has no rootless polynomial for single_eq");
      std::size_t before = prenex->count();
      prenex = to_single_equation(*prenex, *profile.rootless, profile);
      std::string scope = profile.theory() + ", g = " + profile.rootless->format() + " rootless";
      r.pass_trace.push_back({id, kAnchorSingle, before, prenex->count(), scope});
      add_assumption(r, scope);
      record_prenex(*prenex);
    }
  }

  ensure_prenex();
  r.output = prenex->to_formula();
  // A positive-primitive form of the best prenex form always exists with at
  // most one more quantifier.
  PrenexFormula pp_of_best = to_positive_primitive(*best, options);
  if (!best_pp || pp_of_best.count() < best_pp->count()) {
    if (std::find(pipeline.begin(), pipeline.end(), "pp") == pipeline.end())
      r.notes.push_back("perk_upper comes from an implicit pp pass");
    best_pp = pp_of_best;
  }
  r.prenex = *best;
  r.positive = *best_pp;
  r.erk_upper = best->count();
  r.perk_upper = best_pp->count();
  r.efd_upper = r.perk_upper > 0 ? r.perk_upper - 1 : 0;
  r.notes.insert(r.notes.begin(), "all figures are upper bounds, not exact ranks");
  r.notes.push_back("efd_upper = max(perk_upper - 1, 0); only the upper direction of the fibre characterization is certified");
  if (profile.kind == FieldKind::finite)
    r.notes.push_back("over a finite field every definable set is also quantifier-free definable (rank 0)");
  return r;
}

} // namespace erank
