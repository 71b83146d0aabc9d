#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "nos/bitset.hpp"

namespace nos {

using Residue = std::uint32_t;

/// A prime p with 2 <= p < 2^16, checked by trial division on construction.
/// The upper limit keeps every product of residues and every inner-product
/// accumulation of up to 2^32 terms inside 64 bits.
class PrimeModulus {
 public:
  static constexpr std::uint32_t kMax = 65535;

  explicit PrimeModulus(std::uint32_t p);

  std::uint32_t value() const noexcept { return p_; }
  Residue reduce(std::int64_t x) const noexcept;
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((std::uint64_t{a} * b) % p_);
  }
  Residue add(Residue a, Residue b) const noexcept { return (a + b) % p_; }
  Residue pow(Residue a, std::uint64_t e) const noexcept;
  /// Multiplicative inverse; a must be nonzero mod p.
  Residue inverse(Residue a) const;

  friend bool operator==(PrimeModulus, PrimeModulus) = default;
  friend auto operator<=>(PrimeModulus, PrimeModulus) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

/// A vector of F_p^dim. Entries are always canonical residues in [0, p).
class FpVector {
 public:
  /// Throws PreconditionError if dim is zero or any entry is >= p.
  FpVector(PrimeModulus p, std::vector<Residue> entries);
  FpVector(PrimeModulus p, std::initializer_list<Residue> entries)
      : FpVector(p, std::vector<Residue>(entries)) {}

  static FpVector zeros(PrimeModulus p, std::size_t dim);
  static FpVector unit(PrimeModulus p, std::size_t dim, std::size_t i);
  /// Reduces arbitrary integers mod p.
  static FpVector from_integers(PrimeModulus p, std::span<const std::int64_t> values);

  PrimeModulus modulus() const noexcept { return p_; }
  std::uint32_t p() const noexcept { return p_.value(); }
  std::size_t dim() const noexcept { return entries_.size(); }
  Residue operator[](std::size_t i) const noexcept { return entries_[i]; }
  std::span<const Residue> entries() const noexcept { return entries_; }

  bool is_zero() const noexcept;
  /// Position of the first nonzero entry, or dim() for the zero vector.
  std::size_t leading_index() const noexcept;

  FpVector scaled(Residue a) const;
  FpVector padded(std::size_t new_dim) const;
  FpVector prefix(std::size_t len) const;
  FpVector concat(const FpVector& tail) const;
  friend FpVector operator+(const FpVector& a, const FpVector& b);

  friend bool operator==(const FpVector&, const FpVector&) = default;
  friend std::strong_ordering operator<=>(const FpVector& a, const FpVector& b);

 private:
  PrimeModulus p_;
  std::vector<Residue> entries_;
};

std::string to_string(const FpVector& v);

/// Throws ContractViolation unless u and v share modulus and dimension.
void require_compatible(const FpVector& u, const FpVector& v);

/// sum_i u_i v_i mod p.
Residue inner_product(const FpVector& u, const FpVector& v);

bool is_self_orthogonal(const FpVector& v);

inline bool orthogonal(const FpVector& u, const FpVector& v) { return inner_product(u, v) == 0; }

/// Scales v so that its first nonzero entry is 1. Throws PreconditionError on zero.
FpVector normalize_leading(const FpVector& v);

inline bool has_leading_one(const FpVector& v) {
  auto i = v.leading_index();
  return i < v.dim() && v[i] == 1;
}

/// Bit-packed F_2 vector; inner product is the parity of popcount(a & b).
class PackedF2 {
 public:
  explicit PackedF2(const FpVector& v);
  std::size_t dim() const noexcept { return bits_.size(); }
  const Bitset& bits() const noexcept { return bits_; }

 private:
  Bitset bits_;
};

Residue inner_product(const PackedF2& u, const PackedF2& v);

/// Every vector of F_p^dim in lexicographic order (entry 0 most significant).
std::vector<FpVector> all_vectors(PrimeModulus p, std::size_t dim);

}  // namespace nos
