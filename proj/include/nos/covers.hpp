#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nos/bigint.hpp"
#include "nos/ff.hpp"

namespace nos {

/// A subspace of F_p^s held in reduced row echelon form. Equal subspaces have
/// identical representations, so == compares subspaces.
class SubspaceBasis {
 public:
  static SubspaceBasis zero(PrimeModulus p, std::size_t ambient_dim);

  PrimeModulus modulus() const noexcept { return p_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<FpVector>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(const FpVector& v) const;
  /// Number of vectors in the subspace, p^rank.
  BigInt cardinality() const { return pow_big(p_.value(), rank()); }

  friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
    return a.p_ == b.p_ && a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
  }

 private:
  friend SubspaceBasis span(PrimeModulus p, std::size_t ambient_dim, std::span<const FpVector> vectors);
  friend void for_each_subspace(PrimeModulus, std::size_t, std::size_t,
                                const std::function<void(const SubspaceBasis&)>&);
  SubspaceBasis(PrimeModulus p, std::size_t ambient) : p_(p), ambient_(ambient) {}

  PrimeModulus p_;
  std::size_t ambient_;
  std::vector<FpVector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Canonical basis of the span of `vectors` inside F_p^ambient_dim.
SubspaceBasis span(PrimeModulus p, std::size_t ambient_dim, std::span<const FpVector> vectors);

/// True iff every basis row of w1 is orthogonal to every basis row of w2.
bool subspaces_orthogonal(const SubspaceBasis& w1, const SubspaceBasis& w2);

/// Adds standard basis vectors (lowest index first) until rank == dim.
SubspaceBasis extend_to_dimension(const SubspaceBasis& w, std::size_t dim);

/// Calls fn once for every r-dimensional subspace of F_p^s, in canonical form.
void for_each_subspace(PrimeModulus p, std::size_t s, std::size_t r,
                       const std::function<void(const SubspaceBasis&)>& fn);

/// Subspace of F_2^t containing A, of dimension at most floor((t+1)/2).
/// A must be pairwise non-orthogonal including each vector with itself.
/// Each v is lifted to (v,1); the lifts span a totally isotropic W in
/// F_2^{t+1} and the result is W with its last coordinate dropped.
SubspaceBasis f2_cover_of(std::span<const FpVector> a, std::size_t t);

struct F2CollectionCount {
  std::size_t t = 0;
  std::size_t dimension = 0;  ///< floor((t+1)/2)
  BigInt count;               ///< subspaces of that dimension, by enumeration
  BigInt coarse_bound;        ///< 2^{t^2}
};

/// Counts the floor((t+1)/2)-dimensional subspaces of F_2^t. Requires t <= 8.
F2CollectionCount count_f2_collection(std::size_t t);

/// Output dimension of g over F_p^t: t^{p-1} + p - 1.
std::size_t g_dimension(PrimeModulus p, std::size_t t);

/// g(v) = (v^{(x)(p-1)}, 1, ..., 1) with p-1 trailing ones.
FpVector g_map(const FpVector& v);

struct GIdentityReport {
  std::uint32_t p = 0;
  std::size_t t = 0;
  std::uint64_t pairs = 0;
  std::uint64_t identity_violations = 0;       ///< <g(a),g(b)> != <a,b>^{p-1} + p - 1
  std::uint64_t biconditional_violations = 0;  ///< (<a,b> = 0) != (<g(a),g(b)> != 0)
  bool ok() const noexcept { return identity_violations == 0 && biconditional_violations == 0; }
};

/// Exhaustive check over all pairs of F_p^t. Throws BudgetExceeded when p^{2t} > pair_budget.
GIdentityReport g_inner_identity_check(PrimeModulus p, std::size_t t, std::uint64_t pair_budget = 10'000'000);

/// {v in F_p^t : g(v) in W}, by enumeration of F_p^t.
std::vector<FpVector> g_preimage(const SubspaceBasis& w, std::size_t t);

struct CoverPair {
  std::vector<FpVector> c1;
  std::vector<FpVector> c2;
  SubspaceBasis w1;
  SubspaceBasis w2;
};

/// C_i = g^{-1}(span g(A_i)). Requires t >= 2 and <u,v> != 0 for all u in A1, v in A2.
CoverPair cover_pair_for(PrimeModulus p, std::size_t t, std::span<const FpVector> a1, std::span<const FpVector> a2);

}  // namespace nos
