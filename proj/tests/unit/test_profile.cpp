#include "doctest.h"

#include "erank/element_syntax.hpp"
#include "erank/errors.hpp"
#include "erank/normal_forms.hpp"
#include "erank/parser.hpp"
#include "erank/ratfunc_eval.hpp"

using namespace erank;

TEST_SUITE("profile") {

TEST_CASE("profile names round-trip") {
  for (const char* name : {"Q", "RCF", "F2", "F9", "F16", "F3t", "F4t", "char3", "char0"})
    CHECK(FieldProfile::parse(name).name() == name);
  CHECK(FieldProfile::parse("char0").theory() == "T_fields");
  CHECK(FieldProfile::parse("F25").d == 2);
  CHECK(FieldProfile::parse("F8t").kind == FieldKind::rational_function);
  CHECK(FieldProfile::parse("RCF").has_order);
  CHECK_FALSE(FieldProfile::parse("F7").has_order);
  CHECK_THROWS_AS(FieldProfile::parse("F6"), InvalidArgumentError);
  CHECK_THROWS_AS(FieldProfile::parse("Z"), InvalidArgumentError);
  CHECK_THROWS_AS(FieldProfile::parse("F3").with_collapse(CollapseMode::general, 6), InvalidArgumentError);
  CHECK(FieldProfile::parse("F3t").with_collapse(CollapseMode::general, 2).collapse_r == 2);
}

TEST_CASE("rootless default over finite fields is the first rootless monic quadratic") {
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    auto profile = FieldProfile::finite_order(q);
    const GaloisField& F = *profile.field;
    auto g = rootless_default(profile);
    REQUIRE(g.degree() == 2);
    std::vector<GaloisField::Elem> c;
    for (const auto& t : g.coefficients)
      c.push_back(eval_term(F, t, {}));
    CHECK(c[2] == 1);
    // brute force: first (b, c) with no root
    std::pair<GaloisField::Elem, GaloisField::Elem> want{0, 0};
    bool found = false;
    for (GaloisField::Elem b = 0; b < q && !found; ++b)
      for (GaloisField::Elem cc = 0; cc < q && !found; ++cc) {
        bool root = false;
        for (GaloisField::Elem z = 0; z < q; ++z)
          root |= F.add(F.add(F.mul(z, z), F.mul(b, z)), cc) == 0;
        if (!root) {
          want = {b, cc};
          found = true;
        }
      }
    CHECK(std::make_pair(c[1], c[0]) == want);
    CHECK_FALSE(has_root_in(g, profile));
  }
  // -1 is a non-residue mod 3
  CHECK(rootless_default(FieldProfile::finite(3)).format() == "Z^2 + 1");
}

TEST_CASE("rootless defaults elsewhere") {
  CHECK(rootless_default(FieldProfile::rationals()).format() == "Z^2 + 1");
  CHECK(rootless_default(FieldProfile::real_closed()).format() == "Z^2 + 1");
  CHECK_THROWS_AS(rootless_default(FieldProfile::abstract_char(3)), UnsupportedProfileError);

  // F_q(t): no root among fractions of degree <= 3
  for (auto [p, d] : {std::pair{2u, 1u}, std::pair{3u, 1u}, std::pair{2u, 2u}}) {
    auto profile = FieldProfile::rational_function(p, d);
    RatFuncField K(profile.field);
    auto g = rootless_default(profile);
    Formula root = Formula::equal(g.evaluate_at(Term::var("z")), Term::literal(0));
    for (const auto& z : enumerate_ratfuncs(K, d == 1 ? 3 : 2))
      CHECK_FALSE(holds(K, root, {{"z", z}}));
  }
}

TEST_CASE("element literals") {
  auto F5 = FieldProfile::parse("F5");
  CHECK(std::get<GaloisField::Elem>(parse_value(F5, "-1")) == 4);
  CHECK(std::get<GaloisField::Elem>(parse_value(F5, "3/2")) == 4);
  auto F9 = FieldProfile::parse("F9");
  auto a = std::get<GaloisField::Elem>(parse_value(F9, "[a]"));
  CHECK(a == F9.field->generator());
  CHECK(format_value(F9, parse_value(F9, "a^2+1")) == format_value(F9, parse_value(F9, "[a^2+1]")));
  auto F2t = FieldProfile::parse("F2t");
  CHECK(format_value(F2t, parse_value(F2t, "(t^2+1)/(t+1)")) == "t+1");
  auto Q = FieldProfile::rationals();
  CHECK(std::get<Rat>(parse_value(Q, "5/6")) == Rat(5, 6));
  CHECK_THROWS_AS(parse_value(Q, "1/0"), InvalidArgumentError);
  CHECK_THROWS_AS(parse_value(Q, "1 +"), ParseError);
  CHECK_THROWS_AS(parse_value(F5, "t"), Error);
  CHECK(split_elements("(t+1)/(t^2+1),t,3") == std::vector<std::string>{"(t+1)/(t^2+1)", "t", "3"});
}

TEST_CASE("homogenization") {
  UnivariatePolynomial g{{Term::literal(1), Term::literal(0), Term::literal(1)}};
  // z0^2 * g(z1/z0) = z1^2 + z0^2: check on F3 values
  auto F3 = GaloisField::make_order(3);
  Term h = g.homogenized(Term::var("u"), Term::var("v"));
  for (GaloisField::Elem u = 0; u < 3; ++u)
    for (GaloisField::Elem v = 0; v < 3; ++v)
      CHECK(eval_term(*F3, h, {{"u", u}, {"v", v}}) == F3->add(F3->mul(u, u), F3->mul(v, v)));
}

} // TEST_SUITE
