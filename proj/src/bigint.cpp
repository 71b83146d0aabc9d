#include "nos/bigint.hpp"

#include <cmath>
#include <limits>

namespace nos {

BigInt pow_big(std::uint64_t base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent) {
    if (exponent & 1) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt integer_root(const BigInt& x, unsigned r) {
  if (x < 2 || r == 1) return x;
  BigInt lo = 1;
  BigInt hi = BigInt(1) << (boost::multiprecision::msb(x) / r + 1);
  // invariant: lo^r <= x < hi^r
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) >> 1;
    if (boost::multiprecision::pow(mid, r) <= x)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double log2_big(const BigInt& x) {
  if (x <= 0) return -std::numeric_limits<double>::infinity();
  auto bits = boost::multiprecision::msb(x);
  if (bits < 53) return std::log2(x.convert_to<double>());
  BigInt top = x >> (bits - 52);
  return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
}

}  // namespace nos
