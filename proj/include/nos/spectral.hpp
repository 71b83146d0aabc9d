#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nos/ff.hpp"

namespace nos {

inline constexpr std::size_t kMaxSpectralOrder = 4096;
inline constexpr double kBoundTolerance = 1e-6;

/// G(p,t): vertices are the nonzero vectors of F_p^t (lexicographic order),
/// u ~ v iff <u,v> = 0, with a loop at every self-orthogonal vertex. Loops
/// are diagonal ones and count 1 toward the degree.
struct SpectralGraph {
  std::uint32_t p = 0;
  std::size_t t = 0;
  std::vector<FpVector> vertices;
  std::vector<std::uint8_t> adjacency;  ///< row-major n x n
  std::size_t degree = 0;

  std::size_t order() const noexcept { return vertices.size(); }
  bool adjacent(std::size_t i, std::size_t j) const { return adjacency[i * order() + j] != 0; }
  std::size_t loop_count() const;
};

/// Builds G(p,t) and asserts (p^{t-1} - 1)-regularity. Requires p^t - 1 <= 4096.
SpectralGraph build_Gpt(PrimeModulus p, std::size_t t);

/// DIMACS "p edge" export; loops as "c loop <i>" comments, 1-based.
std::string to_dimacs(const SpectralGraph& g);
/// One row of 0/1 per line, space separated, diagonal included.
std::string to_matrix_text(const SpectralGraph& g);

struct JacobiResult {
  std::vector<double> eigenvalues;  ///< ascending
  std::size_t sweeps = 0;
};

/// All eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations.
/// Converged once the off-diagonal Frobenius norm drops below rel_tol times
/// the initial Frobenius norm; throws NumericalError after max_sweeps.
JacobiResult jacobi_eigenvalues(std::vector<double> matrix, std::size_t n, double rel_tol = 1e-12,
                                std::size_t max_sweeps = 100);

struct SpectrumReport {
  std::uint32_t p = 0;
  std::size_t t = 0;
  std::size_t order = 0;
  std::size_t degree = 0;
  std::vector<double> eigenvalues;  ///< ascending
  double top = 0;
  double lambda_max_abs_rest = 0;  ///< max |eigenvalue| after removing one copy of the largest
  double lambda_bound = 0;           ///< (p-1) p^{t/2 - 1}
  double trace = 0;
  std::size_t sweeps = 0;
  bool pass = false;  ///< lambda_max_abs_rest <= lambda_bound + 1e-6
};

SpectrumReport spectrum(const SpectralGraph& g);

struct MixingReport {
  std::size_t size1 = 0;
  std::size_t size2 = 0;
  std::uint64_t edges = 0;  ///< ordered adjacent pairs (x1, x2), loops included
  double expected = 0;      ///< (d/n) |C1| |C2|
  double deviation = 0;
  double bound = 0;  ///< lambda sqrt(|C1| |C2|)
  bool holds = false;
};

/// Expander mixing inequality for vertex index sets c1, c2 with the given lambda.
MixingReport mixing_check(const SpectralGraph& g, std::span<const std::size_t> c1, std::span<const std::size_t> c2,
                          double lambda);

struct CrossBoundReport {
  std::uint32_t p = 0;
  std::size_t t = 0;
  std::string mode;  ///< "exhaustive" or "randomized"
  std::uint64_t pairs_checked = 0;
  std::uint64_t max_product = 0;
  std::vector<FpVector> best1;
  std::vector<FpVector> best2;
  std::uint64_t bound = 0;  ///< p^{t+2}
  std::uint64_t violations = 0;
  bool holds() const noexcept { return violations == 0; }
};

/// Checks |C1| |C2| <= p^{t+2} for subsets of F_p^t with every cross pair
/// non-orthogonal. Exhaustive over all pairs of subsets of the nonzero vectors
/// when p^t <= 12; otherwise alternating common-neighbourhood local search
/// from `restarts` random starts (all candidates are checked).
CrossBoundReport cross_product_bound_check(PrimeModulus p, std::size_t t, std::uint64_t seed = 0,
                                           std::size_t restarts = 1000);

}  // namespace nos
