#include "doctest.h"

#include <cstdlib>
#include <set>

#include "corpus.hpp"
#include "erank/charp_collapse.hpp"
#include "erank/element_syntax.hpp"
#include "erank/errors.hpp"
#include "erank/finite_eval.hpp"
#include "erank/parser.hpp"
#include "erank/ratfunc_eval.hpp"

using namespace erank;
using Tuples = std::vector<std::vector<GaloisField::Elem>>;

TEST_SUITE("semantics") {

TEST_CASE("squares mod 5 and mod 7") {
  Formula sq = parse_formula("E y . x = y^2");
  auto F5 = GaloisField::make_order(5);
  CHECK(eval_formula_finite(sq, {{"x", 4}}, F5));
  CHECK_FALSE(eval_formula_finite(sq, {{"x", 2}}, F5));
  CHECK(definable_set(sq, GaloisField::make_order(7)).tuples == Tuples{{0}, {1}, {2}, {4}});
  CHECK(definable_set(Formula::falsity(), F5, std::vector<std::string>{"x"}).tuples.empty());
}

TEST_CASE("cubes in F4 are 0 and 1") {
  CHECK(definable_set(pi_formula(1, 3), GaloisField::make_order(4)).tuples == Tuples{{0}, {1}});
}

TEST_CASE("compiled evaluation agrees with the naive evaluator on the corpus") {
  auto corpus = erank::testing::generate_corpus(80, 7);
  for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
    auto F = GaloisField::make_order(q);
    for (const auto& e : corpus) {
      CAPTURE(format_formula(e.formula));
      CHECK(definable_set(e.formula, F, e.vars).tuples == erank::testing::oracle_set(e.formula, e.vars, *F));
    }
  }
}

TEST_CASE("named constants and variable checks in compiled formulas") {
  auto F9 = GaloisField::make_order(9);
  Formula f = parse_formula("x = c:a^2 + c:b");
  CompiledFormula cf(f, F9, {"x"}, {{"b", 1}});
  GaloisField::Elem want = F9->add(F9->mul(F9->generator(), F9->generator()), 1);
  for (GaloisField::Elem v = 0; v < 9; ++v)
    CHECK(cf.eval(&v) == (v == want));
  CHECK_THROWS_AS(CompiledFormula(parse_formula("x = z"), F9, {"x"}), InvalidArgumentError);
}

TEST_CASE("state cap") {
  setenv("ERANK_MAX_STATES", "10", 1);
  CHECK(max_states() == 10);
  CHECK_THROWS_AS(definable_set(parse_formula("x = y"), GaloisField::make_order(5)), CapExceededError);
  unsetenv("ERANK_MAX_STATES");
  CHECK(max_states() == (std::uint64_t{1} << 24));
  CHECK(tuple_at(7, 3, 2) == std::vector<GaloisField::Elem>{1, 1, 1});
  CHECK(tuple_at(5, 2, 3) == std::vector<GaloisField::Elem>{1, 2});
}

TEST_CASE("generated subfields of F16 and F64") {
  auto F16 = GaloisField::make_order(16);
  CHECK(generated_subfield(*F16, {1}).size == 2);
  GaloisField::Elem w = F16->pow(F16->primitive_element(), 5); // order 3
  CHECK(F16->multiplicative_order(w) == 3);
  auto sub = generated_subfield(*F16, {w});
  CHECK(sub.size == 4);
  CHECK(sub.elements.size() == 4);
  CHECK(generated_subfield(*F16, {F16->primitive_element()}).size == 16);

  for (std::uint64_t q : {16u, 64u}) {
    auto F = GaloisField::make_order(q);
    for (GaloisField::Elem x = 0; x < q; ++x) {
      auto s = generated_subfield(*F, {x});
      CHECK(F->degree() % s.degree == 0);
      CHECK(s.size == (std::uint64_t{1} << s.degree));
      // subfield of size 2^e is exactly the fixed points of x -> x^(2^e)
      for (auto e : s.elements)
        CHECK(F->pow(e, s.size) == e);
    }
  }
}

TEST_CASE("term evaluation across profiles") {
  auto F5 = FieldProfile::finite(5);
  CHECK(std::get<GaloisField::Elem>(eval_term(F5, parse_term("(x + 1)^2"), {{"x", GaloisField::Elem{2}}})) == 4);
  auto F2t = FieldProfile::rational_function(2);
  auto v = eval_term(F2t, parse_term("c:t*(c:t + 1)"), {});
  CHECK(format_value(F2t, v) == "t^2+t");
  auto Q = FieldProfile::rationals();
  auto s = eval_term(Q, parse_term("x + y"), {{"x", Rat(1, 2)}, {"y", Rat(1, 3)}});
  CHECK(std::get<Rat>(s) == Rat(5, 6));
  CHECK_THROWS_AS(eval_term(Q, parse_term("x + z"), {{"x", Rat(1)}}), InvalidArgumentError);
}

TEST_CASE("direct evaluation rejects quantifiers") {
  RationalField Q;
  CHECK_THROWS_AS(holds(Q, parse_formula("E y . x = y"), {{"x", Rat(1)}}), InvalidArgumentError);
  CHECK(holds(Q, parse_formula("x*x = 2*x | x = 3"), {{"x", Rat(2)}}));
}

TEST_CASE("bounded witness search over F2(t)") {
  RatFuncField K(GaloisField::make_order(2));
  Formula sq = pi_formula(1, 2);
  RatFunc t = K.t();
  auto r = eval_bounded_ratfunc(sq, {{"x1", K.pow(t, 2)}}, K, 1);
  REQUIRE(r.verdict == BoundedVerdict::holds);
  CHECK(r.witness.at("y1") == t);
  CHECK(eval_bounded_ratfunc(sq, {{"x1", t}}, K, 4).verdict == BoundedVerdict::no_witness_up_to_bound);

  // monotone in the bound
  for (const auto& x : enumerate_ratfuncs(K, 2)) {
    bool low = eval_bounded_ratfunc(sq, {{"x1", x}}, K, 1).verdict == BoundedVerdict::holds;
    bool high = eval_bounded_ratfunc(sq, {{"x1", x}}, K, 2).verdict == BoundedVerdict::holds;
    CHECK((!low || high));
  }
}

TEST_CASE("collapse formula at (t^2, (t+1)^2) needs a degree 7 witness") {
  RatFuncField K(GaloisField::make_order(2));
  CollapseConfig cfg;
  cfg.p = 2;
  cfg.n = 2;
  Formula phi = fin_gen_pipeline(cfg).to_formula();
  RatFunc x1 = parse_element(K, "t^2"), x2 = parse_element(K, "(t+1)^2");
  std::map<std::string, RatFunc> at{{"x1", x1}, {"x2", x2}};
  auto synth = synth_witness({x1, x2}, cfg, K);
  REQUIRE(synth.has_value());
  CHECK(K.max_degree(*synth) == 7);
  CHECK(*synth == parse_element(K, "t^7+t^6+t^4+t^3+t^2+t"));
  CHECK(eval_bounded_ratfunc(phi, at, K, 6).verdict == BoundedVerdict::no_witness_up_to_bound);
  auto r = eval_bounded_ratfunc(phi, at, K, 7);
  REQUIRE(r.verdict == BoundedVerdict::holds);
  CHECK(r.witness.begin()->second == *synth);
}

} // TEST_SUITE
