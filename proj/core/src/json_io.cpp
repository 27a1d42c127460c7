#include "erank/json_io.hpp"

#include "erank/errors.hpp"
#include "erank/parser.hpp"

namespace erank {

namespace {

Json prenex_json(const PrenexFormula& p) {
  return Json{{"bound", p.bound}, {"count", p.count()}, {"formula", format_formula(p.to_formula())}};
}

} // namespace

Json to_json(const RankReport& r) {
  Json trace = Json::array();
  for (const auto& e : r.pass_trace)
    trace.push_back({{"pass", e.pass}, {"rule", e.anchor}, {"before", e.before}, {"after", e.after}, {"scope", e.scope}});
  return Json{{"kind", "rank_report"},
              {"profile", r.profile},
              {"input", format_formula(r.input)},
              {"erk_upper", r.erk_upper},
              {"perk_upper", r.perk_upper},
              {"efd_upper", r.efd_upper},
              {"bounds_are_upper", true},
              {"assumptions", r.assumptions},
              {"pass_trace", trace},
              {"prenex", prenex_json(r.prenex)},
              {"positive_primitive", prenex_json(r.positive)},
              {"output", format_formula(r.output)},
              {"notes", r.notes}};
}

Json to_json(const EquivReport& r) {
  Json j{{"kind", "equiv_report"}, {"verdict", to_string(r.verdict)}, {"battery", r.battery}};
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    Json assignment = Json::object();
    for (const auto& [k, v] : c.assignment)
      assignment[k] = v;
    Json cx{{"profile", c.profile}, {"assignment", assignment}, {"reason", c.reason}};
    if (c.lhs_value)
      cx["f1"] = *c.lhs_value;
    if (c.rhs_value)
      cx["f2"] = *c.rhs_value;
    j["counterexample"] = cx;
  } else {
    j["counterexample"] = nullptr;
  }
  j["statistics"] = {{"tuples_checked", r.stats.tuples_checked},
                     {"witnesses_synthesized", r.stats.witnesses_synthesized},
                     {"completeness_failures", r.stats.completeness_failures},
                     {"samples_accepted", r.stats.samples_accepted},
                     {"sample_attempts", r.stats.sample_attempts},
                     {"soundness_violations", r.stats.soundness_violations}};
  if (r.seed)
    j["seed"] = *r.seed;
  else
    j["seed"] = nullptr;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const VarietyPresentation& vp) {
  Json gens = Json::array();
  for (const auto& g : vp.generators)
    gens.push_back(format_term(g));
  return Json{{"x_vars", vp.x_vars}, {"y_vars", vp.y_vars}, {"generators", gens}};
}

Json to_json(const DefinableSet& s, const GaloisField& field) {
  Json tuples = Json::array();
  for (const auto& t : s.tuples) {
    Json row = Json::array();
    for (auto v : t)
      row.push_back(field.format(v));
    tuples.push_back(row);
  }
  return Json{{"kind", "definable_set"}, {"profile", s.profile}, {"vars", s.vars}, {"size", s.tuples.size()}, {"tuples", tuples}};
}

Json to_json(const FibreDimEstimate& e) {
  return Json{{"kind", "fibre_dim_estimate"},
              {"label", "HEURISTIC"},
              {"estimated_dim", e.estimated_dim},
              {"exact", e.exact},
              {"range", {e.range_low, e.range_high}},
              {"slope", e.slope},
              {"counts", e.counts}};
}

VarietyPresentation system_from_json(const Json& j) {
  if (!j.is_object())
    throw InvalidArgumentError("system JSON must be an object");
  for (const char* key : {"x_vars", "y_vars", "generators"})
    if (!j.contains(key) || !j.at(key).is_array())
      throw InvalidArgumentError(std::string("system JSON needs an array '") + key + "'");
  VarietyPresentation vp;
  for (const auto& v : j.at("x_vars"))
    vp.x_vars.push_back(v.get<std::string>());
  for (const auto& v : j.at("y_vars"))
    vp.y_vars.push_back(v.get<std::string>());
  for (const auto& g : j.at("generators"))
    vp.generators.push_back(parse_term(g.get<std::string>()));
  vp.validate();
  return vp;
}

} // namespace erank
