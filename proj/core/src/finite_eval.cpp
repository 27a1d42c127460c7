#include "erank/finite_eval.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "erank/errors.hpp"

namespace erank {

std::uint64_t max_states() {
  if (const char* env = std::getenv("ERANK_MAX_STATES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      return v;
  }
  return std::uint64_t{1} << 24;
}

FastArith::FastArith(GaloisFieldPtr field) : field_(std::move(field)), q_(field_->order()) {
  const GaloisField& F = *field_;
  neg_.resize(q_);
  for (Elem a = 0; a < q_; ++a)
    neg_[a] = F.neg(a);
  log_.assign(q_, 0);
  exp_.assign(q_ - 1 == 0 ? 1 : q_ - 1, 1);
  Elem g = F.primitive_element(), cur = 1;
  for (std::uint32_t i = 0; i + 1 < q_; ++i) {
    exp_[i] = cur;
    log_[cur] = i;
    cur = F.mul(cur, g);
  }
  if (q_ <= 1024) {
    add_.resize(static_cast<std::size_t>(q_) * q_);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = 0; b < q_; ++b)
        add_[static_cast<std::size_t>(a) * q_ + b] = F.add(a, b);
  }
}

std::shared_ptr<const FastArith> FastArith::get(const GaloisFieldPtr& field) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::shared_ptr<const FastArith>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(field->characteristic(), field->modulus());
  auto it = cache.find(key);
  if (it != cache.end())
    return it->second;
  auto made = std::make_shared<const FastArith>(field);
  cache.emplace(key, made);
  return made;
}

namespace {

enum class Op : std::uint8_t { var, constant, add, sub, mul, pow };

struct Instr {
  Op op;
  std::uint32_t a = 0, b = 0;
  std::uint64_t imm = 0;
};

struct Atom {
  std::uint32_t begin, end; // instruction range
  std::uint32_t lhs, rhs;   // result registers
};

struct Node {
  Formula::Kind kind;
  std::uint32_t left = 0, right = 0; // children, or body in `left`
  std::uint32_t atom = 0;
  std::vector<std::uint32_t> slots;
};

} // namespace

struct CompiledFormula::Impl {
  std::shared_ptr<const FastArith> arith;
  std::vector<std::string> free_order;
  std::map<std::string, Elem> constants;
  std::vector<Instr> code;
  std::vector<Atom> atoms;
  std::vector<Node> nodes;
  std::vector<Elem> regs;
  std::vector<Elem> slots;
  std::uint32_t root = 0;
  std::size_t n_free = 0;

  Elem constant_value(const std::string& name) const {
    auto it = constants.find(name);
    if (it != constants.end())
      return it->second;
    return arith->field().constant(name);
  }

  std::uint32_t emit(Instr in) {
    code.push_back(in);
    return static_cast<std::uint32_t>(code.size() - 1);
  }

  std::uint32_t compile_term(const Term& t, const std::map<std::string, std::uint32_t>& env,
                             std::unordered_map<const void*, std::uint32_t>& memo) {
    auto hit = memo.find(t.identity());
    if (hit != memo.end())
      return hit->second;
    std::uint32_t r = 0;
    switch (t.kind()) {
    case Term::Kind::variable: {
      auto it = env.find(t.name());
      if (it == env.end())
        throw InvalidArgumentError("no value assigned to variable '" + t.name() + "'");
      r = emit({Op::var, it->second});
      break;
    }
    case Term::Kind::constant:
      r = emit({Op::constant, 0, 0, constant_value(t.name())});
      break;
    case Term::Kind::literal:
      r = emit({Op::constant, 0, 0, arith->field().from_integer(t.value())});
      break;
    case Term::Kind::sum:
    case Term::Kind::difference:
    case Term::Kind::product: {
      std::uint32_t a = compile_term(t.lhs(), env, memo);
      std::uint32_t b = compile_term(t.rhs(), env, memo);
      Op op = t.kind() == Term::Kind::sum ? Op::add : t.kind() == Term::Kind::difference ? Op::sub : Op::mul;
      r = emit({op, a, b});
      break;
    }
    case Term::Kind::power: {
      std::uint32_t a = compile_term(t.base(), env, memo);
      r = emit({Op::pow, a, 0, t.exponent()});
      break;
    }
    }
    memo.emplace(t.identity(), r);
    return r;
  }

  std::uint32_t compile(const Formula& f, std::map<std::string, std::uint32_t> env) {
    Node node;
    node.kind = f.kind();
    switch (f.kind()) {
    case Formula::Kind::truth:
    case Formula::Kind::falsity:
      break;
    case Formula::Kind::less:
      throw UnsupportedProfileError("order atoms cannot be evaluated in a finite field");
    case Formula::Kind::equal:
    case Formula::Kind::not_equal: {
      Atom atom;
      atom.begin = static_cast<std::uint32_t>(code.size());
      std::unordered_map<const void*, std::uint32_t> memo;
      atom.lhs = compile_term(f.lhs_term(), env, memo);
      atom.rhs = compile_term(f.rhs_term(), env, memo);
      atom.end = static_cast<std::uint32_t>(code.size());
      atoms.push_back(atom);
      node.atom = static_cast<std::uint32_t>(atoms.size() - 1);
      break;
    }
    case Formula::Kind::negation:
      node.left = compile(f.body(), env);
      break;
    case Formula::Kind::conj:
    case Formula::Kind::disj:
      node.left = compile(f.left(), env);
      node.right = compile(f.right(), env);
      break;
    case Formula::Kind::exists:
      for (const auto& v : f.bound()) {
        auto slot = static_cast<std::uint32_t>(slots.size());
        slots.push_back(0);
        env[v] = slot;
        node.slots.push_back(slot);
      }
      node.left = compile(f.body(), env);
      break;
    }
    nodes.push_back(std::move(node));
    return static_cast<std::uint32_t>(nodes.size() - 1);
  }

  bool atom_holds(const Atom& atom, bool equal) {
    const FastArith& A = *arith;
    for (std::uint32_t i = atom.begin; i < atom.end; ++i) {
      const Instr& in = code[i];
      Elem v;
      switch (in.op) {
      case Op::var:
        v = slots[in.a];
        break;
      case Op::constant:
        v = static_cast<Elem>(in.imm);
        break;
      case Op::add:
        v = A.add(regs[in.a], regs[in.b]);
        break;
      case Op::sub:
        v = A.sub(regs[in.a], regs[in.b]);
        break;
      case Op::mul:
        v = A.mul(regs[in.a], regs[in.b]);
        break;
      default:
        v = A.pow(regs[in.a], in.imm);
        break;
      }
      regs[i] = v;
    }
    return (regs[atom.lhs] == regs[atom.rhs]) == equal;
  }

  bool exists_from(const Node& node, std::size_t k) {
    if (k == node.slots.size())
      return run(node.left);
    const std::uint32_t q = arith->order();
    Elem& slot = slots[node.slots[k]];
    for (Elem v = 0; v < q; ++v) {
      slot = v;
      if (exists_from(node, k + 1))
        return true;
    }
    return false;
  }

  bool run(std::uint32_t idx) {
    const Node& node = nodes[idx];
    switch (node.kind) {
    case Formula::Kind::truth:
      return true;
    case Formula::Kind::falsity:
      return false;
    case Formula::Kind::equal:
      return atom_holds(atoms[node.atom], true);
    case Formula::Kind::not_equal:
      return atom_holds(atoms[node.atom], false);
    case Formula::Kind::negation:
      return !run(node.left);
    case Formula::Kind::conj:
      return run(node.left) && run(node.right);
    case Formula::Kind::disj:
      return run(node.left) || run(node.right);
    case Formula::Kind::exists:
      return exists_from(node, 0);
    default:
      return false;
    }
  }
};

CompiledFormula::CompiledFormula(const Formula& f, const GaloisFieldPtr& field, const std::vector<std::string>& free_order,
                                 const std::map<std::string, Elem>& constants)
    : impl_(std::make_unique<Impl>()) {
  impl_->arith = FastArith::get(field);
  impl_->free_order = free_order;
  impl_->constants = constants;
  std::map<std::string, std::uint32_t> env;
  for (const auto& v : free_order) {
    if (env.count(v))
      throw InvalidArgumentError("variable '" + v + "' listed twice");
    env[v] = static_cast<std::uint32_t>(impl_->slots.size());
    impl_->slots.push_back(0);
  }
  impl_->n_free = free_order.size();
  impl_->root = impl_->compile(f, env);
  impl_->regs.assign(impl_->code.size(), 0);
}

CompiledFormula::~CompiledFormula() = default;
CompiledFormula::CompiledFormula(CompiledFormula&&) noexcept = default;
CompiledFormula& CompiledFormula::operator=(CompiledFormula&&) noexcept = default;

bool CompiledFormula::eval(const Elem* values) {
  std::copy(values, values + impl_->n_free, impl_->slots.begin());
  return impl_->run(impl_->root);
}

const std::vector<std::string>& CompiledFormula::free_order() const { return impl_->free_order; }

bool eval_formula_finite(const Formula& f, const std::map<std::string, GaloisField::Elem>& assignment,
                         const GaloisFieldPtr& field) {
  std::vector<std::string> order;
  std::vector<GaloisField::Elem> values;
  for (const auto& [name, v] : assignment) {
    if (v >= field->order())
      throw InvalidArgumentError("value of '" + name + "' is outside " + field->name());
    order.push_back(name);
    values.push_back(v);
  }
  CompiledFormula c(f, field, order);
  return c.eval(values.data());
}

bool eval_formula_finite(const Formula& f, const std::map<std::string, GaloisField::Elem>& assignment,
                         const FieldProfile& profile) {
  if (profile.kind != FieldKind::finite)
    throw UnsupportedProfileError("exhaustive evaluation needs a finite profile, got " + profile.name());
  return eval_formula_finite(f, assignment, profile.field);
}

std::vector<GaloisField::Elem> tuple_at(std::uint64_t index, std::size_t arity, std::uint64_t q) {
  std::vector<GaloisField::Elem> out(arity);
  for (std::size_t i = arity; i-- > 0;) {
    out[i] = static_cast<GaloisField::Elem>(index % q);
    index /= q;
  }
  return out;
}

namespace {

std::uint64_t checked_power(std::uint64_t q, std::size_t n) {
  std::uint64_t total = 1;
  const std::uint64_t cap = max_states();
  for (std::size_t i = 0; i < n; ++i) {
    if (total > cap / q)
      throw CapExceededError("enumeration of " + std::to_string(q) + "^" + std::to_string(n) +
                             " tuples exceeds the state cap " + std::to_string(cap) + " (ERANK_MAX_STATES)");
    total *= q;
  }
  return total;
}

} // namespace

std::vector<char> definable_bitmap(const Formula& f, const GaloisFieldPtr& field, const std::vector<std::string>& vars) {
  const std::uint64_t q = field->order();
  const std::uint64_t total = checked_power(q, vars.size());
  std::vector<char> out(total, 0);
  // Partition the tuple space; each worker owns its compiled copy.
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (total < 4096)
    workers = 1;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));
  auto work = [&](std::uint64_t from, std::uint64_t to) {
    CompiledFormula c(f, field, vars);
    auto tuple = tuple_at(from, vars.size(), q);
    for (std::uint64_t i = from; i < to; ++i) {
      out[i] = c.eval(tuple.data());
      for (std::size_t k = tuple.size(); k-- > 0;) {
        if (++tuple[k] < q)
          break;
        tuple[k] = 0;
      }
    }
  };
  if (workers <= 1) {
    work(0, total);
    return out;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    std::uint64_t from = total * w / workers, to = total * (w + 1) / workers;
    threads.emplace_back([&, w, from, to] {
      try {
        work(from, to);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads)
    t.join();
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
  return out;
}

DefinableSet definable_set(const Formula& f, const GaloisFieldPtr& field, const std::optional<std::vector<std::string>>& vars) {
  DefinableSet out;
  out.vars = vars ? *vars : free_variables(f);
  out.profile = field->name();
  auto bits = definable_bitmap(f, field, out.vars);
  for (std::uint64_t i = 0; i < bits.size(); ++i)
    if (bits[i])
      out.tuples.push_back(tuple_at(i, out.vars.size(), field->order()));
  return out;
}

DefinableSet definable_set(const Formula& f, const FieldProfile& profile, const std::optional<std::vector<std::string>>& vars) {
  if (profile.kind != FieldKind::finite)
    throw UnsupportedProfileError("definable_set needs a finite profile, got " + profile.name());
  return definable_set(f, profile.field, vars);
}

Subfield generated_subfield(const GaloisField& field, const std::vector<GaloisField::Elem>& elements) {
  // The ring generated over F_p is the subfield F_{p^e}, e the lcm of the
  // degrees of the generators; an element x has degree e_x = least e with
  // x^(p^e) = x.
  const std::uint32_t p = field.characteristic();
  unsigned e = 1;
  for (auto x : elements) {
    if (x >= field.order())
      throw InvalidArgumentError("element outside " + field.name());
    unsigned ex = 1;
    GaloisField::Elem y = field.pow(x, p);
    while (y != x) {
      y = field.pow(y, p);
      ++ex;
    }
    e = std::lcm(e, ex);
  }
  Subfield out;
  out.degree = e;
  std::uint64_t size = 1;
  for (unsigned i = 0; i < e; ++i)
    size *= p;
  out.size = size;
  for (GaloisField::Elem x = 0; x < field.order(); ++x) {
    GaloisField::Elem y = x;
    for (unsigned i = 0; i < e; ++i)
      y = field.pow(y, p);
    if (y == x)
      out.elements.push_back(x);
  }
  return out;
}

} // namespace erank
