#include "doctest.h"

#include <set>

#include "corpus.hpp"
#include "erank/equivalence.hpp"
#include "erank/errors.hpp"
#include "erank/parser.hpp"
#include "erank/ratfunc_eval.hpp"

using namespace erank;

TEST_SUITE("equivalence") {

TEST_CASE("default battery") {
  std::vector<std::uint32_t> orders;
  for (const auto& F : default_battery())
    orders.push_back(F->order());
  CHECK(orders == std::vector<std::uint32_t>{2, 3, 4, 5, 7, 8, 9});
}

TEST_CASE("finite equivalence") {
  auto F4 = GaloisField::make_order(4);
  CHECK(check_equiv_finite(parse_formula("x^4 = x"), Formula::truth(), F4));
  CHECK_FALSE(check_equiv_finite(parse_formula("x^2 = x"), Formula::truth(), F4));
  // free variables are unioned
  CHECK(check_equiv_finite(parse_formula("x = x"), parse_formula("y = y"), F4));
}

TEST_CASE("squares versus fourth powers over F5") {
  auto r = refute_equivalence(parse_formula("E y . x = y^2"), parse_formula("E y . x = y^4"),
                              {GaloisField::make_order(5)});
  REQUIRE(r.verdict == Verdict::refuted);
  REQUIRE(r.counterexample.has_value());
  CHECK(r.counterexample->assignment == std::vector<std::pair<std::string, std::string>>{{"x", "4"}});
  CHECK(r.counterexample->lhs_value == true);
  CHECK(r.counterexample->rhs_value == false);
  // replay by hand: 4 = 2^2, fourth powers mod 5 are 0 and 1
  auto F5 = GaloisField::make_order(5);
  CHECK(erank::testing::oracle_eval(parse_formula("E y . x = y^2"), {{"x", 4}}, *F5));
  CHECK_FALSE(erank::testing::oracle_eval(parse_formula("E y . x = y^4"), {{"x", 4}}, *F5));
}

TEST_CASE("equivalent pairs survive the battery") {
  auto r = refute_equivalence(parse_formula("x = 0 | x = 1"), parse_formula("x^2 = x"), default_battery());
  CHECK(r.verdict == Verdict::equivalent_on_battery);
  CHECK_FALSE(r.counterexample.has_value());
  CHECK(r.battery.size() == 7);
}

TEST_CASE("sums of two squares cover F_q for odd q") {
  for (std::uint64_t q : {3u, 5u, 7u, 9u}) {
    auto F = GaloisField::make_order(q);
    auto s = value_set_quadratic({1, 1}, F);
    CHECK(s.tuples.size() == q);
    // single squares: (q+1)/2 values
    std::set<GaloisField::Elem> sq;
    for (GaloisField::Elem y = 0; y < q; ++y)
      sq.insert(F->mul(y, y));
    CHECK(value_set_quadratic({1}, F).tuples.size() == sq.size());
    CHECK(sq.size() == (q + 1) / 2);
  }
  CHECK_THROWS_AS(value_set_quadratic({1, 1}, GaloisField::make_order(4)), InvalidArgumentError);
  CHECK_THROWS_AS(value_set_quadratic({}, GaloisField::make_order(5)), InvalidArgumentError);
}

TEST_CASE("p^k-power bases") {
  RatFuncField K(GaloisField::make_order(2));
  auto bases = pk_power_bases(K, 5, 2, 1);
  std::set<RatFunc> want;
  for (const auto& u : enumerate_ratfuncs(K, 5))
    if (K.max_degree(K.pow(u, 2)) <= 5)
      want.insert(u);
  CHECK(std::set<RatFunc>(bases.begin(), bases.end()) == want);
  CHECK(pk_power_bases(K, 3, 2, 2).size() == enumerate_ratfuncs(K, 0).size());
}

TEST_CASE("collapse semantics on a small configuration") {
  RatFuncField K(GaloisField::make_order(2));
  CollapseConfig cfg;
  cfg.n = 2;
  CollapseCheckOptions opt;
  opt.samples = 200;
  opt.degree_bound = 2;
  auto r = check_collapse_semantics(cfg, K, opt);
  CHECK(r.verdict == Verdict::positive_direction_verified);
  CHECK(r.stats.completeness_failures == 0);
  CHECK(r.stats.soundness_violations == 0);
  CHECK(r.stats.samples_accepted == 200);
  CHECK(r.seed == 42u);

  auto sweep = sweep_collapse_soundness(cfg, K, 1);
  CHECK(sweep.stats.soundness_violations == 0);
  CHECK(sweep.stats.samples_accepted > 0);
}

TEST_CASE("dropping the +X term breaks soundness") {
  RatFuncField K(GaloisField::make_order(2));
  CollapseConfig cfg;
  cfg.n = 2;
  cfg.drop_x_term = true;
  auto sweep = sweep_collapse_soundness(cfg, K, 2);
  CHECK(sweep.stats.soundness_violations > 0);
  CHECK(sweep.verdict == Verdict::refuted);
}

} // TEST_SUITE
