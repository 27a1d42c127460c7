#include "erank/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "erank/errors.hpp"

namespace erank {

namespace {

void trim(Poly& a) {
  while (!a.c.empty() && a.c.back() == 0)
    a.c.pop_back();
}

} // namespace

PolyRing::PolyRing(GaloisFieldPtr field) : field_(std::move(field)) {
  if (!field_)
    throw InvalidArgumentError("polynomial ring without a coefficient field");
}

Poly PolyRing::constant(Elem c) const {
  Poly out;
  if (c != 0)
    out.c.push_back(c);
  return out;
}

Poly PolyRing::monomial(Elem c, std::size_t degree) const {
  Poly out;
  if (c == 0)
    return out;
  out.c.assign(degree + 1, 0);
  out.c[degree] = c;
  return out;
}

Poly PolyRing::from_coefficients(std::vector<Elem> c) const {
  Poly out{std::move(c)};
  trim(out);
  return out;
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
  const Poly& big = a.c.size() >= b.c.size() ? a : b;
  const Poly& small = a.c.size() >= b.c.size() ? b : a;
  Poly out = big;
  for (std::size_t i = 0; i < small.c.size(); ++i)
    out.c[i] = field_->add(out.c[i], small.c[i]);
  trim(out);
  return out;
}

Poly PolyRing::neg(const Poly& a) const {
  Poly out = a;
  for (auto& x : out.c)
    x = field_->neg(x);
  return out;
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const {
  Poly out = a;
  if (out.c.size() < b.c.size())
    out.c.resize(b.c.size(), 0);
  for (std::size_t i = 0; i < b.c.size(); ++i)
    out.c[i] = field_->sub(out.c[i], b.c[i]);
  trim(out);
  return out;
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
  if (a.is_zero() || b.is_zero())
    return {};
  Poly out;
  out.c.assign(a.c.size() + b.c.size() - 1, 0);
  const GaloisField& F = *field_;
  if (F.degree() == 1) {
    // Accumulate in 64 bits and reduce once per output coefficient.
    const std::uint64_t p = F.characteristic();
    std::vector<std::uint64_t> acc(out.c.size(), 0);
    const std::uint64_t flush = p == 0 ? 1 : (~std::uint64_t{0} / 2) / (p * p);
    std::size_t pending = 0;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      std::uint64_t ai = a.c[i];
      if (ai) {
        for (std::size_t j = 0; j < b.c.size(); ++j)
          acc[i + j] += ai * b.c[j];
      }
      if (++pending >= flush) {
        for (auto& x : acc)
          x %= p;
        pending = 0;
      }
    }
    for (std::size_t k = 0; k < acc.size(); ++k)
      out.c[k] = static_cast<Elem>(acc[k] % p);
  } else {
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i] == 0)
        continue;
      for (std::size_t j = 0; j < b.c.size(); ++j)
        out.c[i + j] = F.add(out.c[i + j], F.mul(a.c[i], b.c[j]));
    }
  }
  trim(out);
  return out;
}

Poly PolyRing::scale(const Poly& a, Elem s) const {
  if (s == 0)
    return {};
  Poly out = a;
  for (auto& x : out.c)
    x = field_->mul(x, s);
  return out;
}

Poly PolyRing::pow(const Poly& a, std::uint64_t e) const {
  Poly result = one(), base = a;
  while (e) {
    if (e & 1)
      result = mul(result, base);
    e >>= 1;
    if (e)
      base = mul(base, base);
  }
  return result;
}

namespace {

// Long division over F_p on lazily reduced 64-bit accumulators. Only the
// coefficient about to lead is reduced; the rest are flushed when they could
// overflow. Returns the remainder; fills `quot` when given.
Poly prime_divmod(const Poly& a, const Poly& b, std::uint64_t p, std::uint64_t lead_inv, Poly* quot) {
  const std::size_t bn = b.c.size();
  std::vector<std::uint64_t> acc(a.c.begin(), a.c.end());
  if (quot)
    quot->c.assign(acc.size() - bn + 1, 0);
  const std::uint64_t budget = (~std::uint64_t{0} / 2) / ((p - 1) * (p - 1) + 1);
  std::uint64_t pending = 0;
  for (std::size_t top = acc.size(); top >= bn; --top) {
    const std::size_t k = top - 1;
    const std::uint64_t coef = acc[k] % p;
    acc[k] = 0;
    if (coef == 0)
      continue;
    const std::uint64_t factor = coef * lead_inv % p;
    const std::size_t shift = k - (bn - 1);
    if (quot)
      quot->c[shift] = static_cast<GaloisField::Elem>(factor);
    const std::uint64_t nf = p - factor;
    std::uint64_t* dst = acc.data() + shift;
    for (std::size_t i = 0; i + 1 < bn; ++i)
      dst[i] += nf * b.c[i];
    if (++pending >= budget) {
      for (std::size_t j = 0; j < k; ++j)
        acc[j] %= p;
      pending = 0;
    }
  }
  Poly rem;
  const std::size_t rn = std::min(acc.size(), bn - 1);
  rem.c.resize(rn);
  for (std::size_t i = 0; i < rn; ++i)
    rem.c[i] = static_cast<GaloisField::Elem>(acc[i] % p);
  trim(rem);
  if (quot)
    trim(*quot);
  return rem;
}

} // namespace

std::pair<Poly, Poly> PolyRing::divmod(const Poly& a, const Poly& b) const {
  if (b.is_zero())
    throw InvalidArgumentError("polynomial division by zero");
  const GaloisField& F = *field_;
  Poly rem = a;
  if (rem.c.size() < b.c.size())
    return {Poly{}, rem};
  Elem lead_inv = F.inv(b.c.back());
  if (F.degree() == 1) {
    Poly quot;
    Poly r = prime_divmod(a, b, F.characteristic(), lead_inv, &quot);
    return {std::move(quot), std::move(r)};
  }
  Poly quot;
  quot.c.assign(rem.c.size() - b.c.size() + 1, 0);
  const std::size_t bn = b.c.size();
  for (std::size_t k = rem.c.size(); k-- >= bn;) {
    Elem coef = rem.c[k];
    if (coef == 0) {
      if (k == bn - 1)
        break;
      continue;
    }
    Elem factor = F.mul(coef, lead_inv);
    std::size_t shift = k - (bn - 1);
    quot.c[shift] = factor;
    for (std::size_t i = 0; i < bn; ++i)
      rem.c[shift + i] = F.sub(rem.c[shift + i], F.mul(factor, b.c[i]));
    if (k == bn - 1)
      break;
  }
  trim(quot);
  trim(rem);
  return {quot, rem};
}

Poly PolyRing::div_exact(const Poly& a, const Poly& b) const {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero())
    throw std::logic_error("inexact polynomial division");
  return q;
}

Poly PolyRing::monic(const Poly& a) const {
  if (a.is_zero())
    return a;
  Elem lead = a.c.back();
  if (lead == 1)
    return a;
  return scale(a, field_->inv(lead));
}

Poly PolyRing::gcd(const Poly& a, const Poly& b) const {
  Poly x = a, y = b;
  const bool prime = field_->degree() == 1;
  while (!y.is_zero()) {
    Poly r = prime && x.c.size() >= y.c.size()
                 ? prime_divmod(x, y, field_->characteristic(), field_->inv(y.c.back()), nullptr)
                 : divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

Poly PolyRing::derivative(const Poly& a) const {
  if (a.c.size() <= 1)
    return {};
  Poly out;
  out.c.resize(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i)
    out.c[i - 1] = field_->mul(a.c[i], field_->from_int(static_cast<long long>(i % field_->characteristic())));
  trim(out);
  return out;
}

PolyRing::Elem PolyRing::evaluate(const Poly& a, Elem x) const {
  Elem acc = 0;
  for (std::size_t i = a.c.size(); i-- > 0;)
    acc = field_->add(field_->mul(acc, x), a.c[i]);
  return acc;
}

std::optional<Poly> PolyRing::pth_root(const Poly& a) const {
  const std::uint32_t p = field_->characteristic();
  Poly out;
  if (a.is_zero())
    return out;
  out.c.assign(a.c.size() / p + 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0)
      continue;
    if (i % p != 0)
      return std::nullopt;
    out.c[i / p] = field_->pth_root(a.c[i]);
  }
  trim(out);
  return out;
}

Poly PolyRing::frobenius(const Poly& a) const {
  const std::uint32_t p = field_->characteristic();
  Poly out;
  if (a.is_zero())
    return out;
  out.c.assign((a.c.size() - 1) * p + 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    out.c[i * p] = field_->pow(a.c[i], p);
  return out;
}

std::string PolyRing::format(const Poly& a, const std::string& var) const {
  if (a.is_zero())
    return "0";
  const GaloisField& F = *field_;
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = a.c.size(); i-- > 0;) {
    Elem c = a.c[i];
    if (c == 0)
      continue;
    if (!first)
      os << '+';
    first = false;
    if (i == 0) {
      os << F.format(c);
      continue;
    }
    if (c != 1)
      os << F.format(c) << '*';
    os << var;
    if (i > 1)
      os << '^' << i;
  }
  return os.str();
}

} // namespace erank
