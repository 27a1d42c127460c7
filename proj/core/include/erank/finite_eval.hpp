// Exhaustive semantics over finite fields.

#ifndef ERANK_FINITE_EVAL_HPP
#define ERANK_FINITE_EVAL_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "erank/formula.hpp"
#include "erank/galois_field.hpp"
#include "erank/profile.hpp"

namespace erank {

// Enumeration cap: ERANK_MAX_STATES if set, otherwise 2^24.
std::uint64_t max_states();

// Table-driven arithmetic for one field, shared between evaluators.
class FastArith {
public:
  using Elem = GaloisField::Elem;

  static std::shared_ptr<const FastArith> get(const GaloisFieldPtr& field);
  explicit FastArith(GaloisFieldPtr field);

  Elem add(Elem a, Elem b) const {
    if (!add_.empty())
      return add_[a * q_ + b];
    return field_->add(a, b);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0)
      return 0;
    std::uint32_t s = log_[a] + log_[b];
    return exp_[s >= q_ - 1 ? s - (q_ - 1) : s];
  }
  Elem pow(Elem a, std::uint64_t e) const {
    if (e == 0)
      return 1;
    if (a == 0)
      return 0;
    return exp_[static_cast<std::uint32_t>((static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1))];
  }
  std::uint32_t order() const { return q_; }
  const GaloisField& field() const { return *field_; }

private:
  GaloisFieldPtr field_;
  std::uint32_t q_;
  std::vector<Elem> add_; // q <= 1024
  std::vector<Elem> neg_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
};

// A formula compiled against a field and an ordering of its free variables.
class CompiledFormula {
public:
  using Elem = GaloisField::Elem;

  // Constants other than `a` must be supplied. Throws InvalidArgumentError when
  // a free variable of f is missing from `free_order`.
  CompiledFormula(const Formula& f, const GaloisFieldPtr& field, const std::vector<std::string>& free_order,
                  const std::map<std::string, Elem>& constants = {});
  ~CompiledFormula();
  CompiledFormula(CompiledFormula&&) noexcept;
  CompiledFormula& operator=(CompiledFormula&&) noexcept;

  // values[i] is the value of free_order[i]. Not thread-safe: use one
  // instance per thread.
  bool eval(const Elem* values);
  const std::vector<std::string>& free_order() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool eval_formula_finite(const Formula& f, const std::map<std::string, GaloisField::Elem>& assignment,
                         const GaloisFieldPtr& field);
bool eval_formula_finite(const Formula& f, const std::map<std::string, GaloisField::Elem>& assignment,
                         const FieldProfile& profile);

struct DefinableSet {
  std::vector<std::string> vars;
  // Sorted in enumeration order (lexicographic in element indices).
  std::vector<std::vector<GaloisField::Elem>> tuples;
  std::string profile;

  friend bool operator==(const DefinableSet& a, const DefinableSet& b) {
    return a.vars.size() == b.vars.size() && a.tuples == b.tuples;
  }
};

// Enumeration index -> tuple, first variable most significant.
std::vector<GaloisField::Elem> tuple_at(std::uint64_t index, std::size_t arity, std::uint64_t q);

// Exhaustive over all q^n assignments of `vars` (default: the free variables).
// Throws CapExceededError when q^n exceeds max_states().
DefinableSet definable_set(const Formula& f, const GaloisFieldPtr& field,
                           const std::optional<std::vector<std::string>>& vars = std::nullopt);
DefinableSet definable_set(const Formula& f, const FieldProfile& profile,
                           const std::optional<std::vector<std::string>>& vars = std::nullopt);
// Membership bitmap indexed like tuple_at.
std::vector<char> definable_bitmap(const Formula& f, const GaloisFieldPtr& field, const std::vector<std::string>& vars);

struct Subfield {
  std::vector<GaloisField::Elem> elements; // sorted
  std::uint64_t size = 0;
  unsigned degree = 0; // size = p^degree
};

// Subfield generated by `elements` (closure with 0, 1 under + - *).
Subfield generated_subfield(const GaloisField& field, const std::vector<GaloisField::Elem>& elements);

} // namespace erank

#endif
