#include "doctest.h"

#include <random>
#include <set>

#include "erank/errors.hpp"
#include "erank/ratfunc_eval.hpp"

using namespace erank;

namespace {

std::vector<Poly> polys_up_to(const PolyRing& R, unsigned deg) {
  const std::uint32_t q = R.field().order();
  std::vector<Poly> out;
  std::uint64_t total = 1;
  for (unsigned i = 0; i <= deg; ++i)
    total *= q;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<GaloisField::Elem> c;
    for (std::uint64_t v = idx; v; v /= q)
      c.push_back(static_cast<GaloisField::Elem>(v % q));
    out.push_back(R.from_coefficients(c));
  }
  return out;
}

} // namespace

TEST_SUITE("ratfunc") {

TEST_CASE("normalization: reduced, monic denominator, zero is 0/1") {
  RatFuncField K(GaloisField::make_order(3));
  const auto& R = K.ring();
  Poly t = R.from_coefficients({0, 1});
  Poly tm1 = R.from_coefficients({2, 1});
  RatFunc u = K.make(R.mul(tm1, R.add(t, R.one())), R.scale(tm1, 2));
  CHECK(u.den == R.one());
  CHECK(K.mul(K.from_integer(2), u) == K.from_poly(R.add(t, R.one())));
  CHECK(K.make(R.zero(), t) == K.zero());
  CHECK(K.zero().den == R.one());
  CHECK_THROWS_AS(K.make(t, R.zero()), InvalidArgumentError);
  CHECK_THROWS_AS(K.inv(K.zero()), InvalidArgumentError);
}

TEST_CASE("field identities on random fractions") {
  for (std::uint64_t q : {2u, 3u, 4u}) {
    RatFuncField K(GaloisField::make_order(q));
    auto pool = enumerate_ratfuncs(K, 2);
    std::mt19937_64 rng(q);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 300; ++i) {
      const RatFunc &a = pool[pick(rng)], &b = pool[pick(rng)], &c = pool[pick(rng)];
      CHECK(K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c)));
      CHECK(K.sub(K.add(a, b), b) == a);
      if (!K.is_zero(b))
        CHECK(K.mul(K.div(a, b), b) == a);
      CHECK(K.pow(a, 3) == K.mul(a, K.mul(a, a)));
    }
  }
}

TEST_CASE("enumeration matches reducing every num/den pair") {
  for (std::uint64_t q : {2u, 3u}) {
    RatFuncField K(GaloisField::make_order(q));
    for (unsigned bound : {0u, 1u, 2u}) {
      std::set<RatFunc> brute;
      auto ps = polys_up_to(K.ring(), bound);
      for (const auto& n : ps)
        for (const auto& d : ps)
          if (!d.is_zero())
            brute.insert(K.make(n, d));
      auto got = enumerate_ratfuncs(K, bound);
      CHECK(std::set<RatFunc>(got.begin(), got.end()) == brute);
      CHECK(got.size() == brute.size());
      // ordered by max degree first
      for (std::size_t i = 1; i < got.size(); ++i)
        CHECK(K.max_degree(got[i - 1]) <= K.max_degree(got[i]));
    }
  }
}

TEST_CASE("p-th power test agrees with brute-force root search") {
  for (std::uint64_t q : {2u, 3u}) {
    RatFuncField K(GaloisField::make_order(q));
    const std::uint32_t p = K.characteristic();
    std::set<RatFunc> powers;
    for (const auto& w : enumerate_ratfuncs(K, 2 / p + 1))
      powers.insert(K.pow(w, p));
    for (const auto& u : enumerate_ratfuncs(K, 2)) {
      bool brute = powers.count(u) > 0;
      CHECK(K.pth_power_test(u) == brute);
      auto r = K.pth_root(u);
      CHECK(r.has_value() == brute);
      if (r)
        CHECK(K.pow(*r, p) == u);
      CHECK(K.frobenius(u) == K.pow(u, p));
    }
  }
}

TEST_CASE("p-basis decomposition reassembles") {
  for (std::uint64_t q : {2u, 3u, 5u}) {
    RatFuncField K(GaloisField::make_order(q));
    const std::uint32_t p = K.characteristic();
    for (const auto& z : enumerate_ratfuncs(K, q == 5 ? 1 : 2)) {
      auto parts = K.p_basis_decompose(z);
      REQUIRE(parts.size() == p);
      RatFunc acc = K.zero();
      for (std::uint32_t i = 0; i < p; ++i)
        acc = K.add(acc, K.mul(K.pow(K.t(), i), K.frobenius(parts[i])));
      CHECK(acc == z);
    }
  }
}

TEST_CASE("formatting and the rationals") {
  RatFuncField K(GaloisField::make_order(2));
  CHECK(K.format(K.t()) == "t");
  CHECK(K.format(K.inv(K.add(K.t(), K.one()))) == "1/(t+1)");
  RationalField Q;
  CHECK(Q.format(Q.div(Q.from_integer(5), Q.from_integer(6))) == "5/6");
  CHECK(Q.format(Q.from_integer(-2)) == "-2");
  CHECK(Q.pow(Rat(2, 3), 3) == Rat(8, 27));
  CHECK_THROWS_AS(Q.inv(0), InvalidArgumentError);
  CHECK_THROWS_AS(Q.constant("t"), Error);
}

} // TEST_SUITE
