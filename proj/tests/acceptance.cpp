// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "corpus.hpp"
#include "erank/charp_collapse.hpp"
#include "erank/element_syntax.hpp"
#include "erank/equivalence.hpp"
#include "erank/geometry.hpp"
#include "erank/normal_forms.hpp"
#include "erank/pairing.hpp"
#include "erank/parser.hpp"
#include "erank/ratfunc_eval.hpp"

using namespace erank;
using erank::testing::CorpusEntry;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass)
      detail = why;
    pass = false;
  }
};

const std::vector<CorpusEntry>& corpus() {
  static const auto c = erank::testing::generate_corpus(240);
  return c;
}

std::vector<GaloisFieldPtr> battery() {
  return default_battery();
}

// ---- 1 ----------------------------------------------------------------------

Outcome squares() {
  Outcome out;
  auto t0 = Clock::now();
  const Formula pi = pi_formula(1, 2);
  for (std::uint32_t p : {5u, 7u}) {
    // Residues y*y mod p.
    std::set<std::uint32_t> expected;
    for (std::uint32_t y = 0; y < p; ++y)
      expected.insert(y * y % p);
    auto set = definable_set(pi, GaloisField::make_order(p));
    std::set<std::uint32_t> got;
    for (const auto& t : set.tuples)
      got.insert(t.at(0));
    if (got != expected)
      out.fail("wrong set over F" + std::to_string(p));
  }
  double s = seconds_since(t0);
  if (s >= 1.0)
    out.fail("took " + secs(s));
  if (out.pass)
    out.detail = "F5 {0,1,4}, F7 {0,1,2,4} in " + secs(s);
  return out;
}

// ---- 2 ----------------------------------------------------------------------

Outcome completeness() {
  Outcome out;
  double worst = 0;
  std::uint64_t tuples = 0;
  for (std::uint32_t p : {2u, 3u})
    for (std::size_t n = 1; n <= 3; ++n)
      for (unsigned k = 1; k <= 2; ++k) {
        auto t0 = Clock::now();
        CollapseConfig cfg;
        cfg.p = p;
        cfg.n = n;
        cfg.k = k;
        RatFuncField field(GaloisField::make_order(p));
        CollapseCheckOptions opt;
        opt.degree_bound = 3;
        opt.samples = 0;
        auto r = check_collapse_semantics(cfg, field, opt);
        double s = seconds_since(t0);
        worst = std::max(worst, s);
        tuples += r.stats.tuples_checked;
        std::uint64_t expected = 1;
        auto bases = pk_power_bases(field, 3, p, k).size();
        for (std::size_t i = 0; i < n; ++i)
          expected *= bases;
        std::string tag = "(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")";
        if (r.stats.completeness_failures != 0 || r.stats.tuples_checked != expected ||
            r.stats.witnesses_synthesized != expected)
          out.fail(tag + " " + std::to_string(r.stats.completeness_failures) + " failures");
        if (s >= 60.0)
          out.fail(tag + " took " + secs(s));
      }
  if (out.pass)
    out.detail = std::to_string(tuples) + " tuples over 12 configurations, 0 failures, slowest " + secs(worst);
  return out;
}

// ---- 3 ----------------------------------------------------------------------

// Independent replay of a collapse counterexample.
bool replays_violation(const CollapseConfig& cfg, const RatFuncField& field, const Counterexample& cx) {
  std::map<std::string, RatFunc> a;
  bool some_non_power = false;
  for (const auto& [name, text] : cx.assignment) {
    a[name] = parse_element(field, text);
    if (name != cfg.witness_var) {
      auto u = a[name];
      for (unsigned i = 0; i < cfg.k && !some_non_power; ++i) {
        if (!field.pth_power_test(u))
          some_non_power = true;
        else
          u = *field.pth_root(u);
      }
    }
  }
  return some_non_power && holds(field, fin_gen_pipeline(cfg).matrix, a);
}

Outcome soundness() {
  Outcome out;
  std::uint64_t accepted = 0;
  for (std::uint32_t p : {2u, 3u})
    for (std::size_t n = 1; n <= 3; ++n)
      for (unsigned k = 1; k <= 2; ++k) {
        CollapseConfig cfg;
        cfg.p = p;
        cfg.n = n;
        cfg.k = k;
        RatFuncField field(GaloisField::make_order(p));
        CollapseCheckOptions opt;
        opt.samples = 10000;
        opt.seed = 42;
        opt.completeness = false;
        auto r = check_collapse_semantics(cfg, field, opt);
        accepted += r.stats.samples_accepted;
        std::string tag = "(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")";
        if (r.stats.samples_accepted < 10000)
          out.fail(tag + " only " + std::to_string(r.stats.samples_accepted) + " samples");
        if (r.stats.soundness_violations != 0)
          out.fail(tag + " " + std::to_string(r.stats.soundness_violations) + " violations");
      }
  // Mutation control: f without +X must be caught.
  CollapseConfig bad;
  bad.p = 2;
  bad.n = 2;
  bad.k = 1;
  bad.drop_x_term = true;
  RatFuncField f2(GaloisField::make_order(2));
  CollapseCheckOptions opt;
  opt.samples = 10000;
  opt.seed = 42;
  opt.completeness = false;
  auto sampled = check_collapse_semantics(bad, f2, opt);
  auto swept = sweep_collapse_soundness(bad, f2, 2);
  const auto violations = sampled.stats.soundness_violations + swept.stats.soundness_violations;
  if (violations == 0)
    out.fail("mutation control produced no violation");
  for (const auto* r : {&sampled, &swept})
    if (r->counterexample && !replays_violation(bad, f2, *r->counterexample))
      out.fail("mutation counterexample does not replay");
  if (out.pass)
    out.detail = std::to_string(accepted) + " accepted samples, 0 violations; mutation control: " +
                 std::to_string(sampled.stats.soundness_violations) + " sampled + " +
                 std::to_string(swept.stats.soundness_violations) + " swept violations";
  return out;
}

// ---- 4 ----------------------------------------------------------------------

// Pairs of corpus indices whose prenex forms merge within 3 quantifiers.
std::vector<std::pair<std::size_t, std::size_t>> merge_pairs(const std::vector<PrenexFormula>& prenex) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i + 1 < prenex.size(); ++i)
    if (prenex[i].count() + prenex[i + 1].count() <= 3)
      out.emplace_back(i, i + 1);
  return out;
}

std::vector<std::string> union_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  return a.size() >= b.size() ? a : b; // both are x1..xk prefixes
}

Outcome preservation() {
  Outcome out;
  auto t0 = Clock::now();
  const auto& c = corpus();
  std::vector<PrenexFormula> prenex;
  std::uint64_t comparisons = 0;
  for (const auto& e : c)
    prenex.push_back(to_prenex_existential(e.formula));
  auto fields = battery();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& e = c[i];
    const PrenexFormula merged = merge_pass(prenex[i]);
    const PrenexFormula pp = to_positive_primitive(merged);
    const std::vector<std::pair<const char*, Formula>> outputs = {
        {"prenex", prenex[i].to_formula()}, {"merge", merged.to_formula()}, {"pp", pp.to_formula()}};
    for (const auto& field : fields) {
      auto want = definable_bitmap(e.formula, field, e.vars);
      for (const auto& [pass, g] : outputs) {
        ++comparisons;
        if (definable_bitmap(g, field, e.vars) != want)
          out.fail(std::string(pass) + " changed corpus formula " + std::to_string(i) + " over " + field->name());
      }
    }
  }
  for (auto [i, j] : merge_pairs(prenex)) {
    auto vars = union_vars(c[i].vars, c[j].vars);
    auto dis = merge_disjunction(prenex[i], prenex[j]).to_formula();
    auto con = merge_conjunction(prenex[i], prenex[j]).to_formula();
    for (const auto& field : fields) {
      auto a = definable_bitmap(c[i].formula, field, vars);
      auto b = definable_bitmap(c[j].formula, field, vars);
      std::vector<char> u(a.size()), n(a.size());
      for (std::size_t k = 0; k < a.size(); ++k) {
        u[k] = a[k] || b[k];
        n[k] = a[k] && b[k];
      }
      comparisons += 2;
      if (definable_bitmap(dis, field, vars) != u)
        out.fail("merge_disjunction of " + std::to_string(i) + "," + std::to_string(j) + " over " + field->name());
      if (definable_bitmap(con, field, vars) != n)
        out.fail("merge_conjunction of " + std::to_string(i) + "," + std::to_string(j) + " over " + field->name());
    }
  }
  double s = seconds_since(t0);
  if (s >= 300.0)
    out.fail("took " + secs(s));
  if (out.pass)
    out.detail = std::to_string(c.size()) + " formulas, " + std::to_string(comparisons) +
                 " exhaustive comparisons over the battery, 0 discrepancies in " + secs(s);
  return out;
}

// ---- 5 ----------------------------------------------------------------------

Outcome accounting() {
  Outcome out;
  const auto& c = corpus();
  std::vector<PrenexFormula> prenex;
  for (const auto& e : c)
    prenex.push_back(to_prenex_existential(e.formula));
  for (std::size_t i = 0; i + 1 < prenex.size(); ++i) {
    const auto& a = prenex[i];
    const auto& b = prenex[i + 1];
    if (merge_disjunction(a, b).count() != std::max(a.count(), b.count()))
      out.fail("max rule broken at " + std::to_string(i));
    if (merge_conjunction(a, b).count() != a.count() + b.count())
      out.fail("sum rule broken at " + std::to_string(i));
  }
  std::size_t reports = 0;
  const std::vector<FieldProfile> profiles = {FieldProfile::rationals(), FieldProfile::finite_order(5),
                                              FieldProfile::rational_function(2)};
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto merged = merge_pass(prenex[i]);
    if (to_positive_primitive(merged).count() > merged.count() + 1)
      out.fail("pp added more than one quantifier to " + std::to_string(i));
    for (const auto& profile : profiles) {
      auto r = rank_report(c[i].formula, profile, default_pipeline(c[i].formula, profile));
      ++reports;
      if (!(r.erk_upper <= r.perk_upper && r.perk_upper <= r.erk_upper + 1))
        out.fail("erk/perk sandwich broken at " + std::to_string(i));
      if (r.efd_upper != (r.perk_upper > 0 ? r.perk_upper - 1 : 0))
        out.fail("efd_upper mismatch at " + std::to_string(i));
    }
  }
  if (out.pass)
    out.detail = std::to_string(c.size() - 1) + " merge pairs exact, pp adds <= 1 on all " + std::to_string(c.size()) +
                 ", " + std::to_string(reports) + " reports consistent";
  return out;
}

// ---- 6 ----------------------------------------------------------------------

Outcome geometry() {
  Outcome out;
  const auto& c = corpus();
  auto fields = battery();
  std::size_t members = 0, cases = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    PrenexFormula pp = to_positive_primitive(merge_pass(to_prenex_existential(c[i].formula)));
    ++members;
    auto system = formula_to_system(pp);
    auto back = system_to_formula(system).to_formula();
    for (const auto& field : fields) {
      ++cases;
      if (definable_bitmap(back, field, c[i].vars) != definable_bitmap(c[i].formula, field, c[i].vars))
        out.fail("round trip changed " + std::to_string(i) + " over " + field->name());
      if (image_over_finite(system, field) != definable_set(pp.to_formula(), field, system.x_vars))
        out.fail("image differs from definable set for " + std::to_string(i) + " over " + field->name());
    }
  }
  if (out.pass)
    out.detail = std::to_string(members) + " positive-primitive members, " + std::to_string(cases) + " field cases";
  return out;
}

// ---- 7 ----------------------------------------------------------------------

Outcome pairing() {
  Outcome out;
  std::size_t pairs = 0;
  for (std::uint32_t p : {2u, 3u}) {
    RatFuncField field(GaloisField::make_order(p));
    std::vector<RatFunc> polys;
    for (std::uint32_t idx = 0; idx < p * p * p; ++idx) {
      std::vector<GaloisField::Elem> c = {idx % p, idx / p % p, idx / (p * p)};
      polys.push_back(field.from_poly(field.ring().from_coefficients(c)));
    }
    std::set<RatFunc> codes;
    for (const auto& x : polys)
      for (const auto& y : polys) {
        ++pairs;
        auto z = encode_pair_charp(field, x, y);
        // x^p + t y^p, from the field operations directly.
        auto expect = field.add(field.pow(x, p), field.mul(field.t(), field.pow(y, p)));
        if (!(z == expect))
          out.fail("encode mismatch over F" + std::to_string(p) + "(t)");
        codes.insert(z);
        auto d = decode_pair_charp(field, z);
        if (!d || !(d->first == x) || !(d->second == y))
          out.fail("decode mismatch over F" + std::to_string(p) + "(t)");
      }
    if (codes.size() != polys.size() * polys.size())
      out.fail("collision over F" + std::to_string(p) + "(t)");
  }
  // Cantor: walk the diagonals and compare with the closed form.
  const std::uint64_t N = 500;
  std::uint64_t index = 0, cantor = 0;
  for (std::uint64_t s = 0; s <= 2 * N; ++s)
    for (std::uint64_t y = 0; y <= s; ++y, ++index) {
      std::uint64_t x = s - y;
      if (x > N || y > N)
        continue;
      ++cantor;
      if (encode_pair_nat(x, y) != index)
        out.fail("Cantor encode mismatch at (" + std::to_string(x) + "," + std::to_string(y) + ")");
      if (decode_pair_nat(index) != std::make_pair(x, y))
        out.fail("Cantor decode mismatch at " + std::to_string(index));
    }
  if (cantor != (N + 1) * (N + 1))
    out.fail("Cantor walk covered " + std::to_string(cantor) + " pairs");
  if (out.pass)
    out.detail = std::to_string(pairs) + " char-p pairs injective and decoded, " + std::to_string(cantor) +
                 " Cantor pairs exact";
  return out;
}

// ---- 8 ----------------------------------------------------------------------

bool reconstructs(const std::vector<std::vector<GaloisField::Elem>>& points, const GaloisFieldPtr& field,
                  const std::vector<std::string>& vars) {
  Formula f = qf_interpolation_finite(points, *field, vars);
  if (!is_quantifier_free(f))
    return false;
  auto sorted = points;
  std::sort(sorted.begin(), sorted.end());
  return definable_set(f, field, vars).tuples == sorted;
}

Outcome interpolation() {
  Outcome out;
  std::size_t exhaustive = 0, random = 0;
  for (std::uint32_t q : {2u, 3u, 5u}) {
    auto field = GaloisField::make_order(q);
    for (std::uint32_t mask = 0; mask < (1u << q); ++mask) {
      std::vector<std::vector<GaloisField::Elem>> pts;
      for (std::uint32_t a = 0; a < q; ++a)
        if (mask >> a & 1)
          pts.push_back({a});
      ++exhaustive;
      if (!reconstructs(pts, field, {"x"}))
        out.fail("subset " + std::to_string(mask) + " of F" + std::to_string(q));
    }
  }
  std::mt19937_64 rng(7);
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto field = GaloisField::make_order(q);
    std::bernoulli_distribution coin(0.5);
    for (int s = 0; s < 1000; ++s) {
      std::vector<std::vector<GaloisField::Elem>> pts;
      for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b)
          if (coin(rng))
            pts.push_back({a, b});
      ++random;
      if (!reconstructs(pts, field, {"x1", "x2"}))
        out.fail("random subset " + std::to_string(s) + " of F" + std::to_string(q) + "^2");
    }
  }
  if (out.pass)
    out.detail = std::to_string(exhaustive) + " exhaustive subsets of F_q, " + std::to_string(random) +
                 " random subsets of F_q^2, all exact";
  return out;
}

// ---- 9 ----------------------------------------------------------------------

// Replays a counterexample with the naive evaluator.
bool replays(const Formula& f1, const Formula& f2, const Counterexample& cx) {
  auto field = GaloisField::make_order(FieldProfile::parse(cx.profile).order());
  std::map<std::string, GaloisField::Elem> a;
  for (const auto& [name, text] : cx.assignment)
    a[name] = parse_element(*field, text);
  bool l = erank::testing::oracle_eval(f1, a, *field);
  bool r = erank::testing::oracle_eval(f2, a, *field);
  return l != r && cx.lhs_value == l && cx.rhs_value == r;
}

Outcome refutation() {
  Outcome out;
  const Formula sq = pi_formula(1, 2), fourth = pi_formula(1, 4);
  auto r = refute_equivalence(sq, fourth, {GaloisField::make_order(5)});
  if (r.verdict != Verdict::refuted || !r.counterexample)
    out.fail("no counterexample for squares vs fourth powers over F5");
  else if (r.counterexample->assignment.size() != 1 || r.counterexample->assignment[0].second != "4")
    out.fail("counterexample is not x=4");
  else if (!replays(sq, fourth, *r.counterexample))
    out.fail("F5 counterexample does not replay");
  // Every refutation produced over the corpus replays as well.
  const auto& c = corpus();
  std::size_t refuted = 0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    auto rep = refute_equivalence(c[i].formula, c[i + 1].formula, default_battery());
    if (rep.verdict == Verdict::refuted) {
      ++refuted;
      if (!rep.counterexample || !replays(c[i].formula, c[i + 1].formula, *rep.counterexample))
        out.fail("corpus refutation " + std::to_string(i) + " does not replay");
    }
  }
  if (out.pass)
    out.detail = "x=4 over F5 replays; " + std::to_string(refuted) + " corpus refutations replay";
  return out;
}

} // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"finite-field squares", squares},   {"collapse completeness", completeness},
      {"collapse soundness", soundness},   {"pass preservation", preservation},
      {"quantifier accounting", accounting}, {"geometry round-trip", geometry},
      {"pairing", pairing},                {"qf interpolation", interpolation},
      {"refutation soundness", refutation}};
  int failures = 0;
  int number = 0;
  for (const auto& [name, run] : criteria) {
    ++number;
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double s = seconds_since(t0);
    std::printf("%s %d %s: %s [%s]\n", o.pass ? "PASS" : "FAIL", number, name, o.detail.c_str(), secs(s).c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
