#include <algorithm>

#include "erank/errors.hpp"
#include "erank/normal_forms.hpp"

namespace erank {

Formula qf_interpolation_finite(const std::vector<std::vector<GaloisField::Elem>>& points, const GaloisField& field,
                                const std::vector<std::string>& vars) {
  const std::uint64_t e = field.order() - 1;
  auto unique = points;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  std::vector<Term> indicators;
  for (const auto& a : unique) {
    if (a.size() != vars.size())
      throw InvalidArgumentError("point arity does not match the variable list");
    std::vector<Term> factors;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] >= field.order())
        throw InvalidArgumentError("point coordinate outside " + field.name());
      Term x = Term::var(vars[i]);
      Term diff = a[i] == 0 ? x : x - field.to_term(a[i]);
      // 1 - d^(q-1) is 1 at d = 0 and 0 elsewhere.
      factors.push_back(Term::literal(1) - (e == 1 ? diff : pow(diff, e)));
    }
    indicators.push_back(product_of(factors));
  }
  // Distinct points have disjoint indicators, so the sum is 0 or 1.
  return Formula::equal(sum_of(indicators), Term::literal(1));
}

} // namespace erank
