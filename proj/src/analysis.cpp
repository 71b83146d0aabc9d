#include "nos/analysis.hpp"

#include <algorithm>
#include <numeric>

#include "nos/errors.hpp"

namespace nos {

CountReport count_Npt(PrimeModulus p, std::size_t t) {
  CountReport r;
  r.p = p.value();
  r.t = t;
  std::vector<FpVector> candidates;
  for (auto& v : all_vectors(p, t))
    if (!is_self_orthogonal(v)) candidates.push_back(std::move(v));
  r.candidates = candidates.size();
  if (r.candidates > kMaxCountVertices)
    throw GuardrailExceeded(std::to_string(r.candidates) + " non-self-orthogonal vectors exceed the limit of 24");

  const auto g = OrthoGraph::from_vectors(candidates, GraphMode::non_orthogonality);
  std::vector<std::size_t> largest;
  const std::uint64_t total = for_each_clique(g, [&](std::span<const std::size_t> c) {
    if (c.size() > largest.size()) largest.assign(c.begin(), c.end());
  });
  r.total_sets = total;
  r.nonempty_sets = r.total_sets - 1;
  for (auto i : largest) r.largest_set.push_back(candidates[i]);
  r.lower_bound_witness = r.largest_set;
  if (pow_big(2, r.lower_bound_witness.size()) > r.total_sets) throw InternalError("2^|B| exceeds the set count");
  return r;
}

BigInt ramsey_bound(std::uint64_t d, std::uint64_t k) {
  if (d == 0 || k == 0) throw PreconditionError("ramsey_bound needs d, k >= 1");
  return binomial(d + k, k);
}

std::size_t greedy_clique_cover(const OrthoGraph& g) {
  std::vector<std::size_t> remaining(g.order());
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  std::size_t cliques = 0;
  while (!remaining.empty()) {
    const auto sub = g.induced(remaining);
    const auto best = max_clique(sub);
    std::vector<std::size_t> keep;
    std::size_t w = 0;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (w < best.witness.size() && best.witness[w] == i) {
        ++w;
        continue;
      }
      keep.push_back(remaining[i]);
    }
    remaining = std::move(keep);
    ++cliques;
  }
  return cliques;
}

std::size_t exact_clique_cover(const OrthoGraph& g) {
  const std::size_t n = g.order();
  if (n > kExactCoverVertices) throw GuardrailExceeded("exact clique cover limited to 20 vertices");
  if (n == 0) return 0;
  // assign vertices in order to cliques; a vertex may open clique c only if c == used
  std::vector<std::vector<std::size_t>> cliques;
  auto fits = [&](std::size_t v, const std::vector<std::size_t>& c) {
    return std::all_of(c.begin(), c.end(), [&](std::size_t u) { return g.adjacent(u, v); });
  };
  auto colourable = [&](auto&& self, std::size_t v, std::size_t limit) -> bool {
    if (v == n) return true;
    // by index: deeper calls may grow `cliques`
    for (std::size_t i = 0; i < cliques.size(); ++i)
      if (fits(v, cliques[i])) {
        cliques[i].push_back(v);
        if (self(self, v + 1, limit)) return true;
        cliques[i].pop_back();
      }
    if (cliques.size() < limit) {
      cliques.push_back({v});
      if (self(self, v + 1, limit)) return true;
      cliques.pop_back();
    }
    return false;
  };
  for (std::size_t limit = std::max<std::size_t>(1, independence_number(g));; ++limit) {
    cliques.clear();
    if (colourable(colourable, 0, limit)) return limit;
  }
}

WitnessGraph witness_graph(std::vector<FpVector> set, std::size_t k, BuildMode mode) {
  const Verdict v = mode == BuildMode::clique ? is_k_nearly_orthogonal(set, k) : bipartite_check(set, k);
  if (!v.passed())
    throw PreconditionError(std::string("witness set does not verify in ") + to_string(mode) + " mode: " + v.detail);
  WitnessGraph w{set, OrthoGraph::from_vectors(set, GraphMode::non_orthogonality), k, mode};
  w.clique_bound = mode == BuildMode::clique ? k : k - 1;
  w.xi_upper = set.empty() ? 0 : set.front().dim();
  w.clique_cover_greedy = greedy_clique_cover(w.graph);
  if (w.graph.order() <= kExactCoverVertices) w.clique_cover_exact = exact_clique_cover(w.graph);
  w.clique_cover_upper = w.clique_cover_exact.value_or(w.clique_cover_greedy);
  w.independence_lower = independence_number(w.graph);
  const std::size_t n = w.graph.order();
  if (w.clique_bound > 0 && w.clique_cover_upper * w.clique_bound < n)
    throw InternalError("clique cover below n/k on a K_{k+1}-free graph");
  return w;
}

RatioReport cover_ratio(std::size_t n, std::size_t clique_bound, std::size_t d) {
  if (clique_bound == 0 || d == 0) throw PreconditionError("ratio needs a positive clique bound and dimension");
  RatioReport r;
  r.n = n;
  r.d = d;
  r.cover_lower = (n + clique_bound - 1) / clique_bound;
  r.ratio = boost::rational<std::int64_t>(static_cast<std::int64_t>(r.cover_lower), static_cast<std::int64_t>(d));
  r.value = boost::rational_cast<double>(r.ratio);
  return r;
}

RatioReport ratio_report(const WitnessGraph& w) { return cover_ratio(w.graph.order(), w.clique_bound, w.xi_upper); }

}  // namespace nos
