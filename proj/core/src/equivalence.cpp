#include "erank/equivalence.hpp"

#include <algorithm>
#include <random>

#include "erank/errors.hpp"
#include "erank/ratfunc_eval.hpp"

namespace erank {

const char* to_string(Verdict v) {
  switch (v) {
  case Verdict::equivalent_on_battery:
    return "equivalent_on_battery";
  case Verdict::refuted:
    return "refuted";
  case Verdict::positive_direction_verified:
    return "positive_direction_verified";
  case Verdict::unknown:
    return "unknown";
  }
  return "unknown";
}

std::vector<GaloisFieldPtr> default_battery() {
  std::vector<GaloisFieldPtr> out;
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9})
    out.push_back(GaloisField::make_order(q));
  return out;
}

namespace {

std::vector<std::string> union_free(const Formula& f1, const Formula& f2) {
  auto vars = free_variables(f1);
  for (const auto& v : free_variables(f2))
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      vars.push_back(v);
  return vars;
}

} // namespace

bool check_equiv_finite(const Formula& f1, const Formula& f2, const GaloisFieldPtr& field) {
  auto vars = union_free(f1, f2);
  return definable_bitmap(f1, field, vars) == definable_bitmap(f2, field, vars);
}

EquivReport refute_equivalence(const Formula& f1, const Formula& f2, const std::vector<GaloisFieldPtr>& battery) {
  EquivReport report;
  auto vars = union_free(f1, f2);
  for (const auto& field : battery)
    report.battery.push_back(field->name());
  for (const auto& field : battery) {
    auto a = definable_bitmap(f1, field, vars);
    auto b = definable_bitmap(f2, field, vars);
    report.stats.tuples_checked += a.size();
    for (std::uint64_t i = 0; i < a.size(); ++i) {
      if (a[i] == b[i])
        continue;
      auto tuple = tuple_at(i, vars.size(), field->order());
      std::map<std::string, GaloisField::Elem> assignment;
      for (std::size_t j = 0; j < vars.size(); ++j)
        assignment[vars[j]] = tuple[j];
      // Replay through the plain entry point before reporting.
      bool lhs = eval_formula_finite(f1, assignment, field);
      bool rhs = eval_formula_finite(f2, assignment, field);
      if (lhs == rhs)
        throw std::logic_error("counterexample failed to replay");
      Counterexample cx;
      cx.profile = field->name();
      for (std::size_t j = 0; j < vars.size(); ++j)
        cx.assignment.emplace_back(vars[j], field->format(tuple[j]));
      cx.lhs_value = lhs;
      cx.rhs_value = rhs;
      cx.reason = "f1 and f2 disagree";
      report.counterexample = cx;
      report.verdict = Verdict::refuted;
      return report;
    }
  }
  report.verdict = Verdict::equivalent_on_battery;
  report.notes.push_back("agreement on finite fields does not imply equivalence modulo the theory of fields");
  return report;
}

std::vector<RatFunc> pk_power_bases(const RatFuncField& field, unsigned bound, std::uint32_t p, unsigned k) {
  std::uint64_t pk = 1;
  for (unsigned i = 0; i < k; ++i)
    pk *= p;
  return enumerate_ratfuncs(field, static_cast<unsigned>(bound / pk));
}

namespace {

RatFunc frobenius_k(const RatFuncField& field, RatFunc u, unsigned k) {
  for (unsigned i = 0; i < k; ++i)
    u = field.frobenius(u);
  return u;
}

RatFunc random_ratfunc(const RatFuncField& field, unsigned degree, std::mt19937_64& rng) {
  const std::uint32_t q = field.base().order();
  std::uniform_int_distribution<std::uint32_t> coef(0, q - 1);
  std::uniform_int_distribution<unsigned> deg(0, degree);
  std::vector<GaloisField::Elem> num(degree + 1);
  for (auto& c : num)
    c = coef(rng);
  unsigned dd = deg(rng);
  std::vector<GaloisField::Elem> den(dd + 1);
  for (unsigned i = 0; i < dd; ++i)
    den[i] = coef(rng);
  den[dd] = 1;
  return field.make(field.ring().from_coefficients(std::move(num)), field.ring().from_coefficients(std::move(den)));
}

Counterexample collapse_counterexample(const RatFuncField& field, const CollapseConfig& cfg, const std::vector<RatFunc>& xs,
                                       const std::optional<RatFunc>& y, const std::string& reason) {
  Counterexample cx;
  cx.profile = field.name();
  auto names = cfg.free_names();
  for (std::size_t i = 0; i < xs.size(); ++i)
    cx.assignment.emplace_back(names[i], field.format(xs[i]));
  if (y)
    cx.assignment.emplace_back(cfg.witness_var, field.format(*y));
  cx.reason = reason;
  return cx;
}

} // namespace

EquivReport check_collapse_semantics(const CollapseConfig& cfg, const RatFuncField& field, const CollapseCheckOptions& options) {
  cfg.validate();
  if (field.characteristic() != cfg.p)
    throw InvalidArgumentError("configuration p does not match the field characteristic");
  EquivReport report;
  report.battery.push_back(field.name());
  report.seed = options.seed;
  const PrenexFormula phi = fin_gen_pipeline(cfg);
  const auto names = cfg.free_names();
  auto matrix_holds = [&](const std::vector<RatFunc>& xs, const RatFunc& y) {
    std::map<std::string, RatFunc> a;
    for (std::size_t i = 0; i < xs.size(); ++i)
      a[names[i]] = xs[i];
    a[cfg.witness_var] = y;
    return holds(field, phi.matrix, a);
  };

  std::vector<RatFunc> xs(cfg.n);
  // (a) completeness, exhaustive.
  if (options.completeness) {
    const auto bases = pk_power_bases(field, options.degree_bound, cfg.p, cfg.k);
    std::vector<RatFunc> powers;
    powers.reserve(bases.size());
    for (const auto& b : bases)
      powers.push_back(frobenius_k(field, b, cfg.k));
    std::vector<std::size_t> idx(cfg.n, 0);
    for (;;) {
      for (std::size_t i = 0; i < cfg.n; ++i)
        xs[i] = powers[idx[i]];
      ++report.stats.tuples_checked;
      auto y = synth_witness(xs, cfg, field);
      if (y)
        ++report.stats.witnesses_synthesized;
      if (!y || !matrix_holds(xs, *y)) {
        ++report.stats.completeness_failures;
        if (!report.counterexample)
          report.counterexample = collapse_counterexample(field, cfg, xs, y, "p^k-th power tuple not accepted");
      }
      std::size_t k = cfg.n;
      while (k-- > 0) {
        if (++idx[k] < powers.size())
          break;
        idx[k] = 0;
      }
      if (k == static_cast<std::size_t>(-1))
        break;
    }
  }

  // (b) soundness sampling. On the branch selected by xs the matrix reads
  // T(xs) = y^(p^k), so the only candidate y is the p^k-th root of T.
  std::mt19937_64 rng(options.seed);
  std::bernoulli_distribution coin(0.5);
  const std::uint64_t max_attempts = options.samples * options.max_attempts_factor;
  while (report.stats.samples_accepted < options.samples && report.stats.sample_attempts < max_attempts) {
    ++report.stats.sample_attempts;
    for (auto& x : xs)
      x = coin(rng) ? frobenius_k(field, random_ratfunc(field, options.power_base_degree, rng), cfg.k)
                    : random_ratfunc(field, options.sample_degree, rng);
    auto y = pk_root(field, collapse_branch_value(field, cfg, xs), cfg.k);
    if (!y)
      continue;
    if (!matrix_holds(xs, *y)) {
      report.notes.push_back("branch value and matrix evaluation disagree at a sample");
      continue;
    }
    ++report.stats.samples_accepted;
    bool all_powers = true;
    for (const auto& x : xs)
      all_powers = all_powers && pk_root(field, x, cfg.k).has_value();
    if (!all_powers) {
      ++report.stats.soundness_violations;
      if (!report.counterexample)
        report.counterexample = collapse_counterexample(field, cfg, xs, y, "matrix holds but a component is not a p^k-th power");
    }
  }
  if (report.stats.samples_accepted < options.samples)
    report.notes.push_back("sampling stopped after " + std::to_string(report.stats.sample_attempts) + " attempts with " +
                           std::to_string(report.stats.samples_accepted) + " accepted samples");

  if (report.stats.completeness_failures > 0 || report.stats.soundness_violations > 0)
    report.verdict = Verdict::refuted;
  else if (report.stats.samples_accepted >= options.samples)
    report.verdict = Verdict::positive_direction_verified;
  else
    report.verdict = Verdict::unknown;
  report.notes.push_back("completeness is exhaustive up to degree " + std::to_string(options.degree_bound) +
                         "; soundness is sampled, not proven");
  return report;
}

EquivReport sweep_collapse_soundness(const CollapseConfig& cfg, const RatFuncField& field, unsigned degree_bound) {
  cfg.validate();
  if (field.characteristic() != cfg.p)
    throw InvalidArgumentError("configuration p does not match the field characteristic");
  EquivReport report;
  report.battery.push_back(field.name());
  const PrenexFormula phi = fin_gen_pipeline(cfg);
  const auto names = cfg.free_names();
  const auto elems = enumerate_ratfuncs(field, degree_bound);
  std::vector<std::size_t> idx(cfg.n, 0);
  std::vector<RatFunc> xs(cfg.n);
  for (;;) {
    for (std::size_t i = 0; i < cfg.n; ++i)
      xs[i] = elems[idx[i]];
    ++report.stats.sample_attempts;
    if (auto y = pk_root(field, collapse_branch_value(field, cfg, xs), cfg.k)) {
      std::map<std::string, RatFunc> a;
      for (std::size_t i = 0; i < xs.size(); ++i)
        a[names[i]] = xs[i];
      a[cfg.witness_var] = *y;
      if (holds(field, phi.matrix, a)) {
        ++report.stats.samples_accepted;
        bool all_powers = true;
        for (const auto& x : xs)
          all_powers = all_powers && pk_root(field, x, cfg.k).has_value();
        if (!all_powers) {
          ++report.stats.soundness_violations;
          if (!report.counterexample)
            report.counterexample = collapse_counterexample(field, cfg, xs, y, "matrix holds but a component is not a p^k-th power");
        }
      }
    }
    std::size_t k = cfg.n;
    while (k-- > 0) {
      if (++idx[k] < elems.size())
        break;
      idx[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1))
      break;
  }
  report.verdict = report.stats.soundness_violations > 0 ? Verdict::refuted : Verdict::positive_direction_verified;
  report.notes.push_back("exhaustive over all tuples with entries of degree <= " + std::to_string(degree_bound));
  return report;
}

DefinableSet value_set_quadratic(const std::vector<GaloisField::Elem>& coeffs, const GaloisFieldPtr& field) {
  if (coeffs.empty())
    throw InvalidArgumentError("quadratic form needs at least one coefficient");
  if (field->characteristic() == 2)
    throw InvalidArgumentError("diagonal quadratic forms need odd characteristic");
  const std::uint64_t q = field->order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (total > max_states() / q)
      throw CapExceededError("value set enumeration exceeds the state cap");
    total *= q;
  }
  std::vector<char> hit(q, 0);
  for (std::uint64_t i = 0; i < total; ++i) {
    auto ys = tuple_at(i, coeffs.size(), q);
    GaloisField::Elem acc = 0;
    for (std::size_t j = 0; j < ys.size(); ++j)
      acc = field->add(acc, field->mul(coeffs[j], field->mul(ys[j], ys[j])));
    hit[acc] = 1;
  }
  DefinableSet out;
  out.vars = {"x"};
  out.profile = field->name();
  for (GaloisField::Elem v = 0; v < q; ++v)
    if (hit[v])
      out.tuples.push_back({v});
  return out;
}

} // namespace erank
