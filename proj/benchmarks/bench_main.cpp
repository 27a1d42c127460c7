#include <benchmark/benchmark.h>

#include <random>

#include "erank/charp_collapse.hpp"
#include "erank/finite_eval.hpp"
#include "erank/parser.hpp"
#include "erank/ratfunc_eval.hpp"

using namespace erank;

namespace {

void BM_DefinableSetSquares(benchmark::State& state) {
  auto F = GaloisField::make_order(state.range(0));
  Formula f = parse_formula("E y . x = y^2");
  for (auto _ : state)
    benchmark::DoNotOptimize(definable_set(f, F));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_DefinableSetSquares)->Arg(7)->Arg(49)->Arg(256);

// Two free variables, two quantifiers: q^4 matrix evaluations.
void BM_DefinableSetTwoQuantifiers(benchmark::State& state) {
  auto F = GaloisField::make_order(state.range(0));
  Formula f = parse_formula("E u v . x1 = u^2 + v^2 & x2*u = 1 | x1 = x2^3 & u != v");
  for (auto _ : state)
    benchmark::DoNotOptimize(definable_set(f, F));
}
BENCHMARK(BM_DefinableSetTwoQuantifiers)->Arg(5)->Arg(9)->Arg(16);

void BM_PolyGcd(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const auto deg = static_cast<std::size_t>(state.range(1));
  PolyRing R(GaloisField::make_order(p));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint32_t> coef(1, p - 1);
  auto random_poly = [&] {
    std::vector<GaloisField::Elem> c(deg + 1);
    for (auto& x : c)
      x = coef(rng);
    return R.from_coefficients(c);
  };
  Poly common = random_poly();
  Poly a = R.mul(random_poly(), common), b = R.mul(random_poly(), common);
  for (auto _ : state)
    benchmark::DoNotOptimize(R.gcd(a, b));
}
BENCHMARK(BM_PolyGcd)->Args({2, 64})->Args({7, 64})->Args({2, 512})->Args({101, 256});

void BM_CollapseBranchValue(benchmark::State& state) {
  RatFuncField K(GaloisField::make_order(2));
  CollapseConfig cfg;
  cfg.n = static_cast<std::size_t>(state.range(0));
  auto pool = enumerate_ratfuncs(K, 2);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::vector<RatFunc> xs;
  for (std::size_t i = 0; i < cfg.n; ++i)
    xs.push_back(K.pow(pool[pick(rng)], 2));
  for (auto _ : state)
    benchmark::DoNotOptimize(synth_witness(xs, cfg, K));
}
BENCHMARK(BM_CollapseBranchValue)->Arg(2)->Arg(3)->Arg(4);

void BM_BivariateEval(benchmark::State& state) {
  RatFuncField K(GaloisField::make_order(3));
  auto f = good_case_poly(3);
  RatFunc x = K.make(K.ring().from_coefficients({1, 2, 0, 1}), K.ring().from_coefficients({2, 1}));
  RatFunc y = K.make(K.ring().from_coefficients({0, 1, 1}), K.ring().from_coefficients({1, 0, 1}));
  const bool generic = state.range(0) != 0;
  for (auto _ : state) {
    if (generic)
      benchmark::DoNotOptimize(f.evaluate<RatFuncField>(K, x, y));
    else
      benchmark::DoNotOptimize(f.evaluate(K, x, y));
  }
  state.SetLabel(generic ? "term by term" : "common denominator");
}
BENCHMARK(BM_BivariateEval)->Arg(0)->Arg(1);

void BM_BoundedWitnessSearch(benchmark::State& state) {
  RatFuncField K(GaloisField::make_order(2));
  Formula f = pi_formula(1, 2);
  RatFunc t = K.t();
  const auto bound = static_cast<unsigned>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(eval_bounded_ratfunc(f, {{"x1", t}}, K, bound));
}
BENCHMARK(BM_BoundedWitnessSearch)->Arg(3)->Arg(5);

} // namespace

BENCHMARK_MAIN();
