#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nos/bitset.hpp"
#include "nos/ff.hpp"

namespace nos {

enum class GraphMode { non_orthogonality, orthogonality };

/// Graph over a vector set. Rows hold edges between distinct vertices only;
/// the <v,v> relation lives in the loop flags.
///
/// In non_orthogonality mode i~j iff <v_i,v_j> != 0 and loop(i) iff <v_i,v_i> != 0.
/// Orthogonality mode is the same with == 0.
class OrthoGraph {
 public:
  /// Rejects duplicate vectors and mixed modulus/dimension.
  static OrthoGraph from_vectors(std::vector<FpVector> vertices, GraphMode mode);
  /// Abstract graph without vectors (used for search tests and complements).
  static OrthoGraph from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges,
                               std::vector<bool> loops = {});

  std::size_t order() const noexcept { return rows_.size(); }
  GraphMode mode() const noexcept { return mode_; }
  const std::vector<FpVector>& vertices() const noexcept { return vertices_; }
  bool has_vectors() const noexcept { return !vertices_.empty() || rows_.empty(); }

  bool adjacent(std::size_t i, std::size_t j) const { return rows_[i].test(j); }
  bool loop(std::size_t i) const { return loops_[i]; }
  const Bitset& row(std::size_t i) const { return rows_[i]; }
  std::size_t degree(std::size_t i) const { return rows_[i].count(); }
  std::size_t edge_count() const;
  std::size_t loop_count() const;

  /// Complement over distinct pairs; loop flags are negated.
  OrthoGraph complement() const;
  OrthoGraph induced(std::span<const std::size_t> keep) const;

 private:
  OrthoGraph() = default;

  GraphMode mode_ = GraphMode::non_orthogonality;
  std::vector<FpVector> vertices_;
  std::vector<Bitset> rows_;
  std::vector<bool> loops_;
};

inline constexpr std::size_t kMaxCliqueVertices = 10000;

struct CliqueResult {
  std::size_t size = 0;
  std::vector<std::size_t> witness;  ///< sorted vertex indices
  std::uint64_t nodes = 0;
};

/// Exact maximum clique over distinct vertices (loops ignored) by bitset
/// branch and bound with greedy colouring bounds. Vertices are ordered by
/// descending degree, ties by index. With stop_at > 0 the search returns as
/// soon as a clique of that size is found.
CliqueResult max_clique(const OrthoGraph& g, std::size_t stop_at = 0);

/// Calls fn for every clique (including the empty one) with its vertices in
/// increasing order. Returns the number of cliques visited.
std::uint64_t for_each_clique(const OrthoGraph& g, const std::function<void(std::span<const std::size_t>)>& fn);

/// Bron-Kerbosch with Tomita pivoting; fn receives each maximal clique sorted.
void for_each_maximal_clique(const OrthoGraph& g, const std::function<void(std::span<const std::size_t>)>& fn);

/// Exact independence number (maximum clique of the complement).
std::size_t independence_number(const OrthoGraph& g);

enum class Outcome { pass, fail, inconclusive };

const char* to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::inconclusive;
  /// "clique", "self_orthogonal", "bipartite" or "budget"; empty on pass.
  std::string witness_kind;
  std::vector<std::size_t> witness;   ///< clique, offending vector, or G1
  std::vector<std::size_t> witness2;  ///< k members of N*(G1) for bipartite failures
  std::uint64_t nodes = 0;
  double elapsed_ms = 0;
  std::string detail;

  bool passed() const noexcept { return outcome == Outcome::pass; }
};

/// Pass iff every vector is non-self-orthogonal and no k+1 of them are
/// pairwise non-orthogonal.
Verdict is_k_nearly_orthogonal(std::span<const FpVector> set, std::size_t k);

inline constexpr std::uint64_t kDefaultSubsetBudget = 10'000'000;

/// Pass iff every vector is non-self-orthogonal and for all k-subsets G1, G2
/// (possibly overlapping) some v1 in G1, v2 in G2 are orthogonal. Equivalently
/// |N*(G1)| < k for every k-subset G1, where N*(G1) collects the vectors
/// non-orthogonal to all of G1 (each vector counts as its own neighbour).
/// Returns inconclusive when C(|set|, k) exceeds the budget.
Verdict bipartite_check(std::span<const FpVector> set, std::size_t k,
                        std::uint64_t subset_budget = kDefaultSubsetBudget);

/// Checks a failing verdict's witness directly against inner products.
/// Passing and inconclusive verdicts re-validate trivially.
bool witness_revalidates(const Verdict& v, std::span<const FpVector> set, std::size_t k);

/// DIMACS "p edge" format, 1-based; loops listed as "c loop <i>" comments.
std::string to_dimacs(const OrthoGraph& g);

}  // namespace nos
