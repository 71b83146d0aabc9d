#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nos/bigint.hpp"
#include "nos/ff.hpp"
#include "nos/tensor.hpp"
#include "nos/verify.hpp"

namespace nos {

enum class BuildMode { clique, bipartite };

const char* to_string(BuildMode m);
BuildMode parse_build_mode(const std::string& s);

struct ConstructionParams {
  PrimeModulus p{2};
  std::size_t t = 1;
  std::size_t m = 1;
  std::size_t n = 1;
  std::size_t k = 1;
  std::uint64_t d = 1;  ///< ambient dimension of the output, >= t^m
  BuildMode mode = BuildMode::clique;

  std::uint64_t product_dim() const;
  /// Throws PreconditionError when t, m, n, k are zero or t^m > d.
  void validate() const;
};

/// Non-self-orthogonal vectors of F_p^t in lexicographic order. With
/// `normalized` only vectors whose first nonzero entry is 1 are kept (a no-op
/// for p = 2). Requires p^t <= 2^24.
std::vector<FpVector> enumerate_V(PrimeModulus p, std::size_t t, bool normalized);

struct Schedule {
  std::size_t t = 0;
  std::size_t m = 0;
  BigInt n;
};

/// t = floor(k/8), m = max{m : t^m <= d}, n = floor(2^{mt/4}). Requires k >= 8.
Schedule schedule_f2(std::size_t k, std::uint64_t d);

/// t = max{t : k > 32 t^{p-1}}, m = max{m : t^m <= d}, n = floor(p^{mt/4}).
/// Requires k > 32.
Schedule schedule_fp(PrimeModulus p, std::size_t k, std::uint64_t d);

/// `count` iid uniform members of Q = V^{(x)m}. Sample i draws its factors
/// j = 0..m-1 in order, each as V[uniform_below(|V|)] from
/// RandomStream(seed); V is enumerate_V(p, t, true).
std::vector<TensorFactorization> sample_Q(const ConstructionParams& params, std::uint64_t seed,
                                          std::size_t count);

struct ConstructionRun {
  ConstructionParams params;
  std::uint64_t seed = 0;
  std::size_t max_retries = 0;
  std::size_t retries_used = 0;  ///< attempts made, 1-based; equals max_retries on failure
  std::size_t samples_drawn = 0;
  std::size_t max_multiplicity = 0;  ///< of the accepted (or last) sample sequence
  /// Distinct sampled vectors padded with zeros to dimension d, in order of
  /// first appearance. On failure, the last attempt's set.
  std::vector<FpVector> result;
  Verdict verdict;
};

/// Seed used by attempt `retry` (0-based) of a build with master seed `seed`.
std::uint64_t attempt_seed(std::uint64_t seed, std::size_t retry);

/// Las Vegas build: each attempt samples n members of Q, collapses repeats,
/// and accepts when the set verifies in params.mode and no vector repeats more
/// than k times (clique) or k-1 times (bipartite). Exhausting max_retries
/// yields a FAIL verdict carrying the last witness.
ConstructionRun build(const ConstructionParams& params, std::uint64_t seed, std::size_t max_retries,
                      std::uint64_t subset_budget = kDefaultSubsetBudget);

/// log2 of the union-bound estimate on the failure probability. Clique mode
/// over F_2 uses 2^{m t^2} (n / 2^{m(t-3)/2})^{k+1}; bipartite mode (any p)
/// uses p^{2mt(t^{p-1}+p-1)} (n / p^{m(t/2-3)})^{k}; clique mode for p > 2
/// applies the bipartite bound with k+1. Returns -infinity when n = 0.
double union_bound_log2(const ConstructionParams& params);
double union_bound_log2(PrimeModulus p, std::size_t t, std::size_t m, const BigInt& n, std::size_t k,
                        BuildMode mode);

}  // namespace nos
