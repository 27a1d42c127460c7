#include "erank/pairing.hpp"

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "erank/errors.hpp"

namespace erank {

std::uint64_t encode_pair_nat(std::uint64_t x, std::uint64_t y) {
  using boost::multiprecision::uint128_t;
  uint128_t s = uint128_t(x) + y;
  uint128_t z = s * (s + 1) / 2 + y;
  if (z > std::numeric_limits<std::uint64_t>::max())
    throw CapExceededError("Cantor code exceeds 64 bits");
  return static_cast<std::uint64_t>(z);
}

std::pair<std::uint64_t, std::uint64_t> decode_pair_nat(std::uint64_t z) {
  using boost::multiprecision::uint128_t;
  // Largest w with w(w+1)/2 <= z.
  std::uint64_t w = static_cast<std::uint64_t>((std::sqrt(8.0L * static_cast<long double>(z) + 1) - 1) / 2);
  while (uint128_t(w) * (w + 1) / 2 > z)
    --w;
  while (uint128_t(w + 1) * (w + 2) / 2 <= z)
    ++w;
  std::uint64_t y = z - static_cast<std::uint64_t>(uint128_t(w) * (w + 1) / 2);
  return {w - y, y};
}

RatFunc encode_pair_charp(const RatFuncField& field, const RatFunc& x, const RatFunc& y) {
  if (field.base().degree() != 1)
    throw UnsupportedProfileError("the char-p pairing needs F_p(t) with p prime");
  return field.add(field.frobenius(x), field.mul(field.t(), field.frobenius(y)));
}

std::optional<std::pair<RatFunc, RatFunc>> decode_pair_charp(const RatFuncField& field, const RatFunc& z) {
  if (field.base().degree() != 1)
    throw UnsupportedProfileError("the char-p pairing needs F_p(t) with p prime");
  auto c = field.p_basis_decompose(z);
  for (std::size_t i = 2; i < c.size(); ++i)
    if (!field.is_zero(c[i]))
      return std::nullopt;
  return std::make_pair(c[0], c.size() > 1 ? c[1] : field.zero());
}

} // namespace erank
