#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace nos {

using BigInt = boost::multiprecision::cpp_int;

BigInt pow_big(std::uint64_t base, std::uint64_t exponent);
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// floor(x^(1/r)) for x >= 0, r >= 1.
BigInt integer_root(const BigInt& x, unsigned r);

/// log2 of a positive integer; -infinity for zero.
double log2_big(const BigInt& x);

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace nos
