// Equivalence checks and refutations against finite-field and F_q(t) semantics.

#ifndef ERANK_EQUIVALENCE_HPP
#define ERANK_EQUIVALENCE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "erank/charp_collapse.hpp"
#include "erank/finite_eval.hpp"

namespace erank {

enum class Verdict { equivalent_on_battery, refuted, positive_direction_verified, unknown };
const char* to_string(Verdict v);

struct Counterexample {
  std::string profile;
  std::vector<std::pair<std::string, std::string>> assignment; // formatted values
  std::optional<bool> lhs_value; // equivalence checks: truth of f1 and f2
  std::optional<bool> rhs_value;
  std::string reason;
};

struct EquivStatistics {
  std::uint64_t tuples_checked = 0;
  std::uint64_t witnesses_synthesized = 0;
  std::uint64_t completeness_failures = 0;
  std::uint64_t samples_accepted = 0;
  std::uint64_t sample_attempts = 0;
  std::uint64_t soundness_violations = 0;
};

struct EquivReport {
  Verdict verdict = Verdict::unknown;
  std::vector<std::string> battery;
  std::optional<Counterexample> counterexample;
  EquivStatistics stats;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> notes;
};

// Default battery: F2, F3, F4, F5, F7, F8, F9.
std::vector<GaloisFieldPtr> default_battery();

// Exhaustive comparison of the sets defined over the union of free variables.
bool check_equiv_finite(const Formula& f1, const Formula& f2, const GaloisFieldPtr& field);

// First disagreeing (field, tuple) in battery order, replayed before it is
// reported.
EquivReport refute_equivalence(const Formula& f1, const Formula& f2, const std::vector<GaloisFieldPtr>& battery);

struct CollapseCheckOptions {
  unsigned degree_bound = 3;  // completeness: tuple entries up to this degree
  std::uint64_t samples = 10000;
  std::uint64_t seed = 42;
  unsigned sample_degree = 2;     // soundness: degree of arbitrary components
  unsigned power_base_degree = 1; // soundness: degree of u in sampled u^(p^k)
  std::uint64_t max_attempts_factor = 1000;
  bool completeness = true;   // run phase (a)
};

// (a) every p^k-th-power tuple within the bound is accepted via synth_witness;
// (b) sampled (tuple, y) satisfying the matrix have only p^k-th-power entries.
EquivReport check_collapse_semantics(const CollapseConfig& cfg, const RatFuncField& field,
                                     const CollapseCheckOptions& options = {});

// Exhaustive soundness sweep: every tuple of elements of degree <= bound whose
// branch value has a p^k-th root y is checked against the matrix, then each
// component against pth_power_test. Violations land in the statistics.
EquivReport sweep_collapse_soundness(const CollapseConfig& cfg, const RatFuncField& field, unsigned degree_bound);

// Base elements a with deg(a^(p^k)) <= bound, i.e. deg a <= bound / p^k.
std::vector<RatFunc> pk_power_bases(const RatFuncField& field, unsigned bound, std::uint32_t p, unsigned k);

// Values of sum c_i Y_i^2 over F_q^m. Throws InvalidArgumentError in
// characteristic 2 or for m = 0.
DefinableSet value_set_quadratic(const std::vector<GaloisField::Elem>& coeffs, const GaloisFieldPtr& field);

} // namespace erank

#endif
