// Seeded generator of small existential formulas, plus a naive evaluator used
// as an oracle against the compiled one.

#ifndef ERANK_TESTS_CORPUS_HPP
#define ERANK_TESTS_CORPUS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "erank/finite_eval.hpp"
#include "erank/formula.hpp"
#include "erank/galois_field.hpp"

namespace erank::testing {

struct CorpusEntry {
  Formula formula;
  std::vector<std::string> vars; // declared free variables, x1..xk
};

// Existential formulas with at most 3 free variables and at most 3 quantifiers,
// atoms of degree <= 2 with small integer coefficients.
std::vector<CorpusEntry> generate_corpus(std::size_t count, std::uint64_t seed = 20240601);

// Tree-walking evaluation straight from the field operations.
bool oracle_eval(const Formula& f, std::map<std::string, GaloisField::Elem> assignment, const GaloisField& field);

// Definable set over `vars` via oracle_eval.
std::vector<std::vector<GaloisField::Elem>> oracle_set(const Formula& f, const std::vector<std::string>& vars,
                                                       const GaloisField& field);

} // namespace erank::testing

#endif
