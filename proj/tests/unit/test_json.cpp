#include "doctest.h"

#include "erank/errors.hpp"
#include "erank/json_io.hpp"
#include "erank/parser.hpp"

using namespace erank;

TEST_SUITE("json") {

TEST_CASE("rank report fields") {
  Formula f = parse_formula("E y . x = y^2 & x != 0");
  auto j = to_json(rank_report(f, FieldProfile::finite(5), {"prenex", "merge", "pp"}));
  CHECK(j["kind"] == "rank_report");
  CHECK(j["profile"] == "F5");
  CHECK(j["erk_upper"] == 1);
  CHECK(j["perk_upper"] == 2);
  CHECK(j["efd_upper"] == 1);
  CHECK(j["bounds_are_upper"] == true);
  REQUIRE(j["pass_trace"].size() == 3);
  CHECK(j["pass_trace"][0]["pass"] == "prenex");
  CHECK(j["prenex"]["count"] == 1);
  CHECK(parse_formula(j["output"].get<std::string>()) == parse_formula(j["output"].get<std::string>()));
}

TEST_CASE("equivalence report with and without a counterexample") {
  auto r = refute_equivalence(parse_formula("E y . x = y^2"), parse_formula("E y . x = y^4"), {GaloisField::make_order(5)});
  auto j = to_json(r);
  CHECK(j["kind"] == "equiv_report");
  CHECK(j["verdict"] == "refuted");
  CHECK(j["counterexample"]["assignment"]["x"] == "4");
  CHECK(j["seed"].is_null());
  auto ok = to_json(refute_equivalence(parse_formula("x = x"), Formula::truth(), {GaloisField::make_order(2)}));
  CHECK(ok["counterexample"].is_null());
}

TEST_CASE("definable sets and fibre estimates") {
  auto F9 = GaloisField::make_order(9);
  auto j = to_json(definable_set(parse_formula("x^3 = x"), F9), *F9);
  CHECK(j["kind"] == "definable_set");
  CHECK(j["size"] == 3);
  CHECK(j["tuples"][2][0] == "[2]");
  VarietyPresentation vp{{"x"}, {"y"}, {}};
  auto e = to_json(fibre_dim_estimate(vp, {0}, GaloisField::make_order(2), 2));
  CHECK(e["label"] == "HEURISTIC");
  CHECK(e["estimated_dim"] == 1);
}

TEST_CASE("systems round-trip through JSON") {
  VarietyPresentation vp{{"x1", "x2"}, {"y"}, {parse_term("x1 - y^2"), parse_term("x2*y - 1")}};
  auto j = to_json(vp);
  auto back = system_from_json(j);
  CHECK(back.x_vars == vp.x_vars);
  CHECK(back.y_vars == vp.y_vars);
  CHECK(back.generators == vp.generators);
  CHECK_THROWS_AS(system_from_json(Json::parse(R"({"x_vars": ["x"]})")), InvalidArgumentError);
  CHECK_THROWS_AS(system_from_json(Json::parse(R"({"x_vars": ["x"], "y_vars": [], "generators": ["x +"]})")),
                  ParseError);
  CHECK_THROWS_AS(system_from_json(Json::parse(R"({"x_vars": ["x"], "y_vars": ["x"], "generators": []})")),
                  InvalidArgumentError);
}

} // TEST_SUITE
