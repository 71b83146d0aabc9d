#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nos/bigint.hpp"
#include "nos/ff.hpp"

namespace nos {

/// Largest tensor product dimension that will be materialized.
inline constexpr std::size_t kMaxProductDim = std::size_t{1} << 20;

/// u (x) v. Coordinate (i1, i2) sits at flat position i1 * v.dim() + i2.
FpVector tensor_pair(const FpVector& u, const FpVector& v);

/// A vector of F_p^{t^m} kept together with its m factors in F_p^t.
class TensorFactorization {
 public:
  /// Left fold of tensor_pair over the factors. Factors must be nonempty and
  /// share modulus and dimension.
  explicit TensorFactorization(std::vector<FpVector> factors);

  const std::vector<FpVector>& factors() const noexcept { return factors_; }
  const FpVector& factor(std::size_t j) const { return factors_.at(j); }
  std::size_t order() const noexcept { return factors_.size(); }
  std::size_t base_dim() const noexcept { return factors_.front().dim(); }
  const FpVector& product() const noexcept { return product_; }

  friend bool operator==(const TensorFactorization& a, const TensorFactorization& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<FpVector> factors_;
  FpVector product_;
};

TensorFactorization tensor_many(std::vector<FpVector> factors);
TensorFactorization tensor_power(const FpVector& v, std::size_t m);

/// Deduplicated, sorted j-th factors (0-based j) of the members.
std::vector<FpVector> projection(std::span<const TensorFactorization> set, std::size_t j);

/// A_1 (x) ... (x) A_m, held by its factor sets only.
class ProductBox {
 public:
  /// Factor sets are deduplicated. All vectors must share modulus and dimension.
  explicit ProductBox(std::vector<std::vector<FpVector>> factor_sets);

  const std::vector<std::vector<FpVector>>& factor_sets() const noexcept { return sets_; }
  std::size_t order() const noexcept { return sets_.size(); }

 private:
  std::vector<std::vector<FpVector>> sets_;
};

/// prod |A_j|. Requires every vector to be nonzero with leading entry 1, in which
/// case the product equals the number of distinct vectors in the box.
BigInt box_size(const ProductBox& box);

bool box_contains(const ProductBox& box, const TensorFactorization& f);

/// Distinct product vectors of the box, sorted.
std::vector<FpVector> materialize(const ProductBox& box, std::size_t limit = std::size_t{1} << 20);

}  // namespace nos
