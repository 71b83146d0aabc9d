#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "nos/bigint.hpp"
#include "nos/construction.hpp"
#include "nos/ff.hpp"
#include "nos/verify.hpp"

namespace nos {

inline constexpr std::size_t kMaxCountVertices = 24;

struct CountReport {
  std::uint32_t p = 0;
  std::size_t t = 0;
  std::size_t candidates = 0;  ///< non-self-orthogonal vectors of F_p^t
  BigInt total_sets;           ///< pairwise non-orthogonal sets, empty set included
  BigInt nonempty_sets;
  std::vector<FpVector> largest_set;
  /// Pairwise non-orthogonal set B with 2^|B| <= total_sets (the largest clique).
  std::vector<FpVector> lower_bound_witness;
};

/// Counts the sets of non-self-orthogonal vectors of F_p^t that are pairwise
/// non-orthogonal, by enumerating all cliques of their non-orthogonality
/// graph. Requires at most 24 non-self-orthogonal vectors.
CountReport count_Npt(PrimeModulus p, std::size_t t);

/// C(d+k, k), the Ramsey-type upper bound on k-nearly orthogonal sets in dimension d.
BigInt ramsey_bound(std::uint64_t d, std::uint64_t k);

inline constexpr std::size_t kExactCoverVertices = 20;

struct WitnessGraph {
  std::vector<FpVector> source_set;
  OrthoGraph graph;
  std::size_t k = 0;
  BuildMode mode = BuildMode::clique;
  std::size_t clique_bound = 0;  ///< largest clique the verified property allows
  std::size_t xi_upper = 0;      ///< the ambient dimension: the set represents its own graph
  std::size_t clique_cover_greedy = 0;
  std::optional<std::size_t> clique_cover_exact;  ///< computed when n <= 20
  std::size_t clique_cover_upper = 0;             ///< exact when available, else greedy
  std::size_t independence_lower = 0;
};

/// Re-verifies the set (k-nearly orthogonal, or the bipartite property for
/// mode bipartite, which caps cliques at k-1) and records clique cover and
/// independence data for its non-orthogonality graph.
WitnessGraph witness_graph(std::vector<FpVector> set, std::size_t k, BuildMode mode);

/// Size of the greedy cover obtained by repeatedly removing a maximum clique.
std::size_t greedy_clique_cover(const OrthoGraph& g);

/// Exact clique cover number by backtracking colouring of the complement.
std::size_t exact_clique_cover(const OrthoGraph& g);

struct RatioReport {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t cover_lower = 0;  ///< ceil(n / clique_bound)
  boost::rational<std::int64_t> ratio;
  double value = 0;
};

/// ceil(n / clique_bound) / d for an n-vertex graph without cliques larger
/// than clique_bound represented in dimension d.
RatioReport cover_ratio(std::size_t n, std::size_t clique_bound, std::size_t d);

/// ceil(n / clique_bound) / xi_upper: a lower bound on chi-bar(G) / xi(G).
RatioReport ratio_report(const WitnessGraph& w);

}  // namespace nos
