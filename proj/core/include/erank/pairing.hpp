// Polynomial pairing functions: Cantor on naturals, x^p + t y^p on F_p(t).

#ifndef ERANK_PAIRING_HPP
#define ERANK_PAIRING_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "erank/ratfunc.hpp"

namespace erank {

// (x+y)(x+y+1)/2 + y. Throws CapExceededError on 64-bit overflow.
std::uint64_t encode_pair_nat(std::uint64_t x, std::uint64_t y);
std::pair<std::uint64_t, std::uint64_t> decode_pair_nat(std::uint64_t z);

// x^p + t y^p; needs a prime base field F_p.
RatFunc encode_pair_charp(const RatFuncField& field, const RatFunc& x, const RatFunc& y);
// nullopt means "not a code": some component c_i with i >= 2 is nonzero.
std::optional<std::pair<RatFunc, RatFunc>> decode_pair_charp(const RatFuncField& field, const RatFunc& z);

// Left fold f(f(...f(a1, a2)...), an); n = 1 is the identity.
template <class T>
T tuple_encode(const std::vector<T>& xs, const std::function<T(const T&, const T&)>& pair) {
  if (xs.empty())
    throw std::invalid_argument("tuple_encode of an empty tuple");
  T acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i)
    acc = pair(acc, xs[i]);
  return acc;
}

// Unfolds n - 1 times; nullopt as soon as the pair decoder rejects a code.
template <class T>
std::optional<std::vector<T>> tuple_decode(const T& code, std::size_t n,
                                           const std::function<std::optional<std::pair<T, T>>(const T&)>& unpair) {
  if (n == 0)
    throw std::invalid_argument("tuple_decode with n = 0");
  std::vector<T> out(n);
  T cur = code;
  for (std::size_t i = n; i-- > 1;) {
    auto pr = unpair(cur);
    if (!pr)
      return std::nullopt;
    out[i] = pr->second;
    cur = pr->first;
  }
  out[0] = cur;
  return out;
}

} // namespace erank

#endif
