#include "erank/galois_field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "erank/errors.hpp"

namespace erank {

namespace {

constexpr std::uint64_t max_field_order = 1u << 22;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0)
        n /= f;
    }
  }
  if (n > 1)
    out.push_back(n);
  return out;
}

// Index <-> coefficient vector with a fixed length d.
fp_poly::Coeffs digits(std::uint32_t index, std::uint32_t p, unsigned d) {
  fp_poly::Coeffs c(d, 0);
  for (unsigned i = 0; i < d; ++i) {
    c[i] = index % p;
    index /= p;
  }
  return c;
}

} // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0)
      return false;
  return true;
}

std::optional<std::pair<std::uint32_t, unsigned>> prime_power(std::uint64_t q) {
  if (q < 2)
    return std::nullopt;
  auto factors = prime_factors(q);
  if (factors.size() != 1)
    return std::nullopt;
  std::uint64_t p = factors.front();
  unsigned d = 0;
  while (q > 1) {
    q /= p;
    ++d;
  }
  return std::make_pair(static_cast<std::uint32_t>(p), d);
}

namespace fp_poly {

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

namespace {
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime: a^(p-2)
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1)
      result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}
} // namespace

Coeffs mod(Coeffs a, const Coeffs& m, std::uint32_t p) {
  trim(a);
  Coeffs mm = m;
  trim(mm);
  if (mm.empty())
    throw InvalidArgumentError("polynomial division by zero");
  std::uint32_t lead_inv = inv_mod(mm.back(), p);
  while (a.size() >= mm.size()) {
    std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    std::size_t shift = a.size() - mm.size();
    for (std::size_t i = 0; i < mm.size(); ++i) {
      std::uint64_t sub = factor * mm[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

bool irreducible(const Coeffs& m, std::uint32_t p) {
  Coeffs mm = m;
  trim(mm);
  if (mm.size() < 2)
    return false;
  std::size_t deg = mm.size() - 1;
  if (deg == 1)
    return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t k = 1; k <= deg / 2; ++k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i)
      count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Coeffs div(k + 1, 0);
      std::uint64_t rest = idx;
      for (std::size_t i = 0; i < k; ++i) {
        div[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      div[k] = 1;
      if (mod(mm, div, p).empty())
        return false;
    }
  }
  return true;
}

} // namespace fp_poly

std::shared_ptr<const GaloisField> GaloisField::make(std::uint32_t p, unsigned d) {
  if (!is_prime(p))
    throw InvalidArgumentError("characteristic " + std::to_string(p) + " is not prime");
  if (d == 0)
    throw InvalidArgumentError("field degree must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < d; ++i) {
    q *= p;
    if (q > max_field_order)
      throw CapExceededError("field order above " + std::to_string(max_field_order));
  }
  // Monic moduli of degree d in index order of their lower coefficients.
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    fp_poly::Coeffs m = digits(static_cast<std::uint32_t>(idx), p, d);
    m.push_back(1);
    if (fp_poly::irreducible(m, p))
      return std::make_shared<const GaloisField>(p, std::move(m));
  }
  throw std::logic_error("no irreducible polynomial found");
}

std::shared_ptr<const GaloisField> GaloisField::make_order(std::uint64_t q) {
  auto pp = prime_power(q);
  if (!pp)
    throw InvalidArgumentError(std::to_string(q) + " is not a prime power");
  return make(pp->first, pp->second);
}

GaloisField::GaloisField(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p))
    throw InvalidArgumentError("characteristic " + std::to_string(p) + " is not prime");
  fp_poly::trim(modulus_);
  if (modulus_.size() < 2 || modulus_.back() != 1)
    throw InvalidArgumentError("field modulus must be monic of positive degree");
  for (auto c : modulus_)
    if (c >= p)
      throw InvalidArgumentError("modulus coefficient out of range");
  if (!fp_poly::irreducible(modulus_, p))
    throw InvalidArgumentError("field modulus is reducible");
  d_ = static_cast<unsigned>(modulus_.size() - 1);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < d_; ++i) {
    pow_p_.push_back(static_cast<std::uint32_t>(q));
    q *= p;
    if (q > max_field_order)
      throw CapExceededError("field order above " + std::to_string(max_field_order));
  }
  q_ = static_cast<std::uint32_t>(q);
  build_tables();
}

void GaloisField::build_tables() {
  // Slow multiplication through polynomial reduction, only used here.
  auto slow_mul = [&](Elem a, Elem b) {
    auto ca = digits(a, p_, d_), cb = digits(b, p_, d_);
    fp_poly::Coeffs prod(2 * d_, 0);
    for (unsigned i = 0; i < d_; ++i)
      for (unsigned j = 0; j < d_; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
    auto r = fp_poly::mod(prod, modulus_, p_);
    Elem out = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
      out += r[i] * pow_p_[i];
    return out;
  };
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem result = 1, base = a;
    while (e) {
      if (e & 1)
        result = slow_mul(result, base);
      base = slow_mul(base, base);
      e >>= 1;
    }
    return result;
  };

  std::uint64_t group = q_ - 1;
  auto factors = prime_factors(group);
  primitive_ = 1;
  if (q_ > 2) {
    for (Elem g = 2; g < q_; ++g) {
      bool ok = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t f) { return slow_pow(g, group / f) != 1; });
      if (ok) {
        primitive_ = g;
        break;
      }
    }
  }
  exp_.assign(group, 0);
  log_.assign(q_, 0);
  Elem cur = 1;
  for (std::uint64_t i = 0; i < group; ++i) {
    exp_[i] = cur;
    log_[cur] = static_cast<std::uint32_t>(i);
    cur = slow_mul(cur, primitive_);
  }
  if (q_ <= 256) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = 0; b < q_; ++b) {
        Elem r = 0;
        for (unsigned i = 0; i < d_; ++i) {
          std::uint32_t da = (a / pow_p_[i]) % p_, db = (b / pow_p_[i]) % p_;
          r += ((da + db) % p_) * pow_p_[i];
        }
        add_table_[static_cast<std::size_t>(a) * q_ + b] = r;
      }
  }
}

GaloisField::Elem GaloisField::generator() const {
  if (d_ == 1)
    throw UnsupportedProfileError("the generator constant 'a' only exists in F_q with q not prime");
  return p_;
}

GaloisField::Elem GaloisField::constant(const std::string& name) const {
  if (name == "a")
    return generator();
  throw UnsupportedProfileError("unknown constant '" + name + "' in " + this->name());
}

GaloisField::Elem GaloisField::add(Elem a, Elem b) const {
  if (d_ == 1) {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (!add_table_.empty())
    return add_table_[static_cast<std::size_t>(a) * q_ + b];
  Elem r = 0;
  for (unsigned i = 0; i < d_; ++i) {
    std::uint32_t da = (a / pow_p_[i]) % p_, db = (b / pow_p_[i]) % p_;
    r += ((da + db) % p_) * pow_p_[i];
  }
  return r;
}

GaloisField::Elem GaloisField::neg(Elem a) const {
  if (d_ == 1)
    return a == 0 ? 0 : p_ - a;
  Elem r = 0;
  for (unsigned i = 0; i < d_; ++i) {
    std::uint32_t da = (a / pow_p_[i]) % p_;
    r += ((p_ - da) % p_) * pow_p_[i];
  }
  return r;
}

GaloisField::Elem GaloisField::sub(Elem a, Elem b) const {
  if (d_ == 1)
    return a >= b ? a - b : a + p_ - b;
  return add(a, neg(b));
}

GaloisField::Elem GaloisField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0)
    return 0;
  if (d_ == 1)
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  std::uint64_t s = static_cast<std::uint64_t>(log_[a]) + log_[b];
  std::uint64_t group = q_ - 1;
  if (s >= group)
    s -= group;
  return exp_[s];
}

GaloisField::Elem GaloisField::inv(Elem a) const {
  if (a == 0)
    throw InvalidArgumentError("inverse of zero");
  std::uint64_t group = q_ - 1;
  return exp_[(group - log_[a]) % group];
}

GaloisField::Elem GaloisField::pow(Elem a, std::uint64_t e) const {
  if (e == 0)
    return 1;
  if (a == 0)
    return 0;
  std::uint64_t group = q_ - 1;
  return exp_[static_cast<std::uint64_t>(log_[a]) * (e % group) % group];
}

GaloisField::Elem GaloisField::from_integer(const BigInt& n) const {
  BigInt r = n % p_;
  if (r < 0)
    r += p_;
  return static_cast<Elem>(r);
}

GaloisField::Elem GaloisField::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0)
    r += p_;
  return static_cast<Elem>(r);
}

GaloisField::Elem GaloisField::pth_root(Elem a) const {
  std::uint64_t e = 1;
  for (unsigned i = 1; i < d_; ++i)
    e *= p_;
  return pow(a, e);
}

std::vector<std::uint32_t> GaloisField::coefficients(Elem a) const { return digits(a, p_, d_); }

GaloisField::Elem GaloisField::from_coefficients(const std::vector<std::uint32_t>& c) const {
  fp_poly::Coeffs r = fp_poly::mod(c, modulus_, p_);
  Elem out = 0;
  for (std::size_t i = 0; i < r.size(); ++i)
    out += (r[i] % p_) * pow_p_[i];
  return out;
}

std::string GaloisField::format(Elem a) const {
  if (d_ == 1)
    return std::to_string(a);
  auto c = coefficients(a);
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0)
      continue;
    if (!first)
      os << '+';
    first = false;
    if (i == 0) {
      os << c[i];
      continue;
    }
    if (c[i] != 1)
      os << c[i] << '*';
    os << 'a';
    if (i > 1)
      os << '^' << i;
  }
  if (first)
    os << '0';
  os << ']';
  return os.str();
}

Term GaloisField::to_term(Elem a) const {
  if (d_ == 1)
    return Term::literal(a);
  auto c = coefficients(a);
  std::vector<Term> parts;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0)
      continue;
    if (i == 0) {
      parts.push_back(Term::literal(c[i]));
      continue;
    }
    Term mono = i == 1 ? Term::constant("a") : Term::power(Term::constant("a"), i);
    parts.push_back(c[i] == 1 ? mono : Term::literal(c[i]) * mono);
  }
  return sum_of(parts);
}

std::uint64_t GaloisField::multiplicative_order(Elem a) const {
  if (a == 0)
    throw InvalidArgumentError("zero has no multiplicative order");
  std::uint64_t group = q_ - 1;
  std::uint64_t g = std::gcd(static_cast<std::uint64_t>(log_[a]), group);
  return group / g;
}

} // namespace erank
