#include "erank/ratfunc_eval.hpp"

#include "erank/errors.hpp"
#include "erank/finite_eval.hpp"
#include "erank/normal_forms.hpp"

namespace erank {

namespace {

std::vector<Poly> polys_of_degree(const PolyRing& ring, long degree, bool monic) {
  // Coefficient vectors in index order (c_0 least significant digit).
  const std::uint64_t q = ring.field().order();
  std::vector<Poly> out;
  if (degree < 0) {
    out.push_back(ring.zero());
    return out;
  }
  std::uint64_t low = 1;
  for (long i = 0; i < degree; ++i)
    low *= q;
  const std::uint64_t leads = monic ? 1 : q - 1;
  for (std::uint64_t lead = 0; lead < leads; ++lead) {
    for (std::uint64_t rest = 0; rest < low; ++rest) {
      std::vector<GaloisField::Elem> c(static_cast<std::size_t>(degree) + 1);
      std::uint64_t r = rest;
      for (long i = 0; i < degree; ++i) {
        c[static_cast<std::size_t>(i)] = static_cast<GaloisField::Elem>(r % q);
        r /= q;
      }
      c[static_cast<std::size_t>(degree)] = static_cast<GaloisField::Elem>(monic ? 1 : lead + 1);
      out.push_back(Poly{std::move(c)});
    }
  }
  return out;
}

} // namespace

std::vector<RatFunc> enumerate_ratfuncs(const RatFuncField& field, unsigned bound) {
  const PolyRing& ring = field.ring();
  const std::uint64_t q = field.base().order();
  // Rough size check before allocating: about q^(2 bound + 1) candidates.
  long double estimate = 1;
  for (unsigned i = 0; i < 2 * bound + 1; ++i)
    estimate *= static_cast<long double>(q);
  if (estimate > static_cast<long double>(max_states()))
    throw CapExceededError("enumerating F_q(t) up to degree " + std::to_string(bound) + " exceeds the state cap " +
                           std::to_string(max_states()) + " (ERANK_MAX_STATES)");
  std::vector<RatFunc> out;
  out.push_back(field.zero());
  for (long m = 0; m <= static_cast<long>(bound); ++m) {
    // Denominators: monic, degree <= m; numerators: degree <= m; max degree exactly m.
    for (long dd = 0; dd <= m; ++dd) {
      for (const auto& den : polys_of_degree(ring, dd, true)) {
        for (long nd = 0; nd <= m; ++nd) {
          if (nd != m && dd != m)
            continue;
          for (const auto& num : polys_of_degree(ring, nd, false)) {
            if (dd > 0 && ring.gcd(num, den).degree() > 0)
              continue;
            out.push_back(RatFunc{num, den});
          }
        }
      }
    }
  }
  return out;
}

BoundedResult eval_bounded_ratfunc(const Formula& f, const std::map<std::string, RatFunc>& assignment,
                                   const RatFuncField& field, unsigned bound) {
  PrenexFormula p = to_prenex_existential(f);
  BoundedResult result;
  auto local = assignment;
  if (p.bound.empty()) {
    result.candidates_checked = 1;
    if (holds(field, p.matrix, local))
      result.verdict = BoundedVerdict::holds;
    return result;
  }
  auto candidates = enumerate_ratfuncs(field, bound);
  long double space = 1;
  for (std::size_t i = 0; i < p.bound.size(); ++i)
    space *= static_cast<long double>(candidates.size());
  if (space > static_cast<long double>(max_states()))
    throw CapExceededError("witness search space exceeds the state cap " + std::to_string(max_states()));
  std::vector<std::size_t> idx(p.bound.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < idx.size(); ++i)
      local[p.bound[i]] = candidates[idx[i]];
    ++result.candidates_checked;
    if (holds(field, p.matrix, local)) {
      result.verdict = BoundedVerdict::holds;
      for (const auto& v : p.bound)
        result.witness.emplace(v, local[v]);
      return result;
    }
    std::size_t k = idx.size();
    while (k-- > 0) {
      if (++idx[k] < candidates.size())
        break;
      idx[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1))
      return result;
  }
}

const char* to_string(BoundedVerdict v) {
  return v == BoundedVerdict::holds ? "true" : "no_witness_up_to_bound";
}

} // namespace erank
