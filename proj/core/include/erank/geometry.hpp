// Positive-primitive formulas as polynomial systems with a projection V -> A^n.

#ifndef ERANK_GEOMETRY_HPP
#define ERANK_GEOMETRY_HPP

#include <string>
#include <vector>

#include "erank/finite_eval.hpp"
#include "erank/normal_forms.hpp"

namespace erank {

struct VarietyPresentation {
  std::vector<std::string> x_vars; // ambient coordinates
  std::vector<std::string> y_vars; // fibre coordinates
  std::vector<Term> generators;    // empty: all of A^(x+y)

  // Throws InvalidArgumentError when the lists overlap or a generator uses an
  // undeclared variable.
  void validate() const;
};

// Throws InvalidArgumentError unless the matrix is a conjunction of equations.
VarietyPresentation formula_to_system(const PrenexFormula& f);
PrenexFormula system_to_formula(const VarietyPresentation& vp);

// Projection of the zero set to the x coordinates, enumerating all (x, y).
DefinableSet image_over_finite(const VarietyPresentation& vp, const GaloisFieldPtr& field);

struct FibrePoints {
  GaloisFieldPtr extension; // F_{q^k}
  GaloisField::Elem base_generator_image = 0; // image of `a` when the base is not prime
  std::vector<std::vector<GaloisField::Elem>> points;
};

// y-solutions over F_{q^k} with x fixed to x0 (elements of the base field).
FibrePoints fibre_points(const VarietyPresentation& vp, const std::vector<GaloisField::Elem>& x0,
                         const GaloisFieldPtr& base, unsigned k);
std::uint64_t fibre_count(const VarietyPresentation& vp, const std::vector<GaloisField::Elem>& x0,
                          const GaloisFieldPtr& base, unsigned k);

// HEURISTIC: slope of log_q N_k against k.
struct FibreDimEstimate {
  long estimated_dim = 0; // -1 for an empty fibre at every k
  bool exact = false;     // counts fit the slope within tolerance
  long range_low = 0;
  long range_high = 0;
  double slope = 0;
  std::vector<std::uint64_t> counts; // N_1 .. N_max_k
};

FibreDimEstimate fibre_dim_estimate(const VarietyPresentation& vp, const std::vector<GaloisField::Elem>& x0,
                                    const GaloisFieldPtr& base, unsigned max_k);

} // namespace erank

#endif
