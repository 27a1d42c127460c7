#include "doctest.h"

#include <random>

#include "erank/charp_collapse.hpp"
#include "erank/element_syntax.hpp"
#include "erank/errors.hpp"
#include "erank/parser.hpp"
#include "erank/ratfunc_eval.hpp"

using namespace erank;

namespace {

// Generic path: one field operation at a time, reducing after each.
RatFunc slow_eval(const BivariatePolynomial& f, const RatFuncField& K, const RatFunc& x, const RatFunc& y) {
  RatFunc acc = K.zero();
  for (const auto& m : f.terms)
    acc = K.add(acc, K.mul(K.from_integer(m.coefficient), K.mul(K.pow(x, m.x_exp), K.pow(y, m.y_exp))));
  return acc;
}

bool matrix_holds(const PrenexFormula& phi, const CollapseConfig& cfg, const RatFuncField& K,
                  const std::vector<RatFunc>& xs, const RatFunc& y) {
  std::map<std::string, RatFunc> a;
  for (std::size_t i = 0; i < xs.size(); ++i)
    a["x" + std::to_string(i + 1)] = xs[i];
  a[cfg.witness_var] = y;
  return holds(K, phi.matrix, a);
}

} // namespace

TEST_SUITE("charp") {

TEST_CASE("pi formulas") {
  CHECK(format_formula(pi_formula(2, 3)) == "E y1 y2 . x1 = y1^3 & x2 = y2^3");
  CHECK(format_formula(pi_formula(1, 1)) == "E y1 . x1 = y1");
}

TEST_CASE("the good-case polynomial for p = 2 and p = 3") {
  auto show = [](std::uint32_t p) { return format_term(good_case_poly(p).to_term(Term::var("X"), Term::var("Y"))); };
  CHECK(show(2) == "X^3*Y + X^3*Y^4 + X^5 + X");
  CHECK(show(3) == "X^4*Y + X^4*Y^9 + X^7 + X");
  CHECK(good_case_poly(5).degree_in_y() == 25);
  CHECK(good_case_poly(5).degree_in_x() == 11);
  CHECK(good_case_poly(2, true).terms.size() == 3);
}

TEST_CASE("common-denominator evaluation matches term-by-term evaluation") {
  for (std::uint32_t p : {2u, 3u}) {
    RatFuncField K(GaloisField::make_order(p));
    auto f = good_case_poly(p);
    auto pool = enumerate_ratfuncs(K, 1);
    for (const auto& x : pool)
      for (const auto& y : pool)
        CHECK(f.evaluate(K, x, y) == slow_eval(f, K, x, y));
  }
}

TEST_CASE("collapse formula shapes") {
  CollapseConfig one;
  auto phi = collapse_pth_powers(one);
  CHECK(phi.count() == 1);
  CHECK(format_formula(phi.to_formula()) == "E y . x1 = y^2");
  CHECK(frobenius_lift(phi, 2, 1) == phi);
  auto lifted = frobenius_lift(phi, 2, 2);
  CHECK(lifted.count() == 1);
  // semantically x1 = y^4
  RatFuncField K(GaloisField::make_order(2));
  RatFunc t = K.t();
  CHECK(matrix_holds(lifted, one, K, {K.pow(t, 4)}, t));
  CHECK_FALSE(matrix_holds(lifted, one, K, {K.pow(t, 2)}, t));

  for (std::size_t n : {1u, 2u, 3u, 4u}) {
    CollapseConfig cfg;
    cfg.p = 3;
    cfg.n = n;
    cfg.k = 2;
    CHECK(fin_gen_pipeline(cfg).count() == 1);
  }
}

TEST_CASE("config validation") {
  CollapseConfig c;
  c.p = 4;
  CHECK_THROWS_AS(c.validate(), InvalidArgumentError);
  c.p = 3;
  c.mode = CollapseMode::general;
  c.r = 3;
  CHECK_THROWS_AS(c.validate(), InvalidArgumentError);
  c.r = 2;
  CHECK_NOTHROW(c.validate());
  c.n = 17;
  CHECK_THROWS_AS(c.validate(), CapExceededError);
  c.n = 0;
  CHECK_THROWS_AS(c.validate(), InvalidArgumentError);
}

TEST_CASE("witness synthesis") {
  RatFuncField K(GaloisField::make_order(2));
  CollapseConfig cfg;
  cfg.n = 2;
  auto phi = fin_gen_pipeline(cfg);
  RatFunc t = K.t(), one = K.one();
  CHECK_FALSE(synth_witness({t, one}, cfg, K).has_value());
  for (std::uint32_t p : {2u, 3u, 5u}) {
    RatFuncField Kp(GaloisField::make_order(p));
    CollapseConfig c;
    c.p = p;
    c.n = 2;
    auto w = synth_witness({Kp.one(), Kp.one()}, c, Kp);
    REQUIRE(w.has_value());
    CHECK(matrix_holds(fin_gen_pipeline(c), c, Kp, {Kp.one(), Kp.one()}, *w));
  }
  auto w = synth_witness({K.pow(t, 2), K.pow(K.add(t, one), 2)}, cfg, K);
  REQUIRE(w.has_value());
  CHECK(matrix_holds(phi, cfg, K, {K.pow(t, 2), K.pow(K.add(t, one), 2)}, *w));
}

TEST_CASE("every small tuple of p^k-th powers gets a witness that satisfies the matrix") {
  struct Case {
    std::uint32_t p;
    std::size_t n;
    unsigned k;
    CollapseMode mode;
    unsigned r;
  };
  for (const auto& c : {Case{2, 2, 1, CollapseMode::ufd_p_divisible_units, 1}, Case{2, 3, 1, CollapseMode::general, 1},
                        Case{3, 2, 1, CollapseMode::general, 2}, Case{2, 2, 2, CollapseMode::ufd_p_divisible_units, 1}}) {
    RatFuncField K(GaloisField::make_order(c.p));
    CollapseConfig cfg;
    cfg.p = c.p;
    cfg.n = c.n;
    cfg.k = c.k;
    cfg.mode = c.mode;
    cfg.r = c.r;
    auto phi = fin_gen_pipeline(cfg);
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < c.k; ++i)
      pk *= c.p;
    auto bases = enumerate_ratfuncs(K, 1);
    std::mt19937_64 rng(c.p * 100 + c.n);
    std::uniform_int_distribution<std::size_t> pick(0, bases.size() - 1);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<RatFunc> xs;
      for (std::size_t i = 0; i < c.n; ++i)
        xs.push_back(K.pow(bases[pick(rng)], pk));
      auto w = synth_witness(xs, cfg, K);
      REQUIRE(w.has_value());
      CHECK(matrix_holds(phi, cfg, K, xs, *w));
    }
  }
}

TEST_CASE("p^k-th roots") {
  RatFuncField K(GaloisField::make_order(3));
  RatFunc u = parse_element(K, "(t+1)/(t^2+2)");
  CHECK(pk_root(K, K.pow(u, 9), 2) == u);
  CHECK_FALSE(pk_root(K, K.pow(u, 3), 2).has_value());
  CHECK(pk_root(K, parse_element(K, "t^3+1"), 1) == parse_element(K, "t+1"));
}

} // TEST_SUITE
