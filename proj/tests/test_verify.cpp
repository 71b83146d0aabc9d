#include <gtest/gtest.h>

#include <random>

#include "nos/errors.hpp"
#include "nos/verify.hpp"
#include "oracle.hpp"

using namespace nos;

namespace {

FpVector vec(std::uint32_t p, std::initializer_list<Residue> e) { return FpVector(PrimeModulus(p), e); }

std::vector<FpVector> basis(std::uint32_t p, std::size_t d) {
  std::vector<FpVector> out;
  for (std::size_t i = 0; i < d; ++i) out.push_back(FpVector::unit(PrimeModulus(p), d, i));
  return out;
}

// e1, e1+e2, ..., e1+e_{t}
std::vector<FpVector> star(std::uint32_t p, std::size_t t) {
  const PrimeModulus mod(p);
  std::vector<FpVector> out{FpVector::unit(mod, t, 0)};
  for (std::size_t i = 1; i < t; ++i) out.push_back(FpVector::unit(mod, t, 0) + FpVector::unit(mod, t, i));
  return out;
}

std::vector<FpVector> random_distinct(std::mt19937_64& rng, PrimeModulus p, std::size_t dim, std::size_t n) {
  std::vector<FpVector> out;
  while (out.size() < n) {
    std::vector<Residue> e(dim);
    for (auto& x : e) x = static_cast<Residue>(rng() % p.value());
    FpVector v(p, e);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

OrthoGraph random_graph(std::mt19937_64& rng, std::size_t n, double density) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (u(rng) < density) edges.emplace_back(i, j);
  return OrthoGraph::from_edges(n, edges);
}

std::vector<std::vector<bool>> adjacency(const OrthoGraph& g) {
  std::vector<std::vector<bool>> a(g.order(), std::vector<bool>(g.order()));
  for (std::size_t i = 0; i < g.order(); ++i)
    for (std::size_t j = 0; j < g.order(); ++j) a[i][j] = i != j && g.adjacent(i, j);
  return a;
}

}  // namespace

TEST(OrthoGraph, Examples) {
  const auto g = OrthoGraph::from_vectors(basis(2, 3), GraphMode::non_orthogonality);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.loop_count(), 3u);
  const auto h = OrthoGraph::from_vectors({vec(2, {1, 1, 1}), vec(2, {1, 0, 0})}, GraphMode::non_orthogonality);
  EXPECT_EQ(h.edge_count(), 1u);
  EXPECT_EQ(OrthoGraph::from_vectors({}, GraphMode::non_orthogonality).order(), 0u);
  EXPECT_THROW(OrthoGraph::from_vectors({vec(2, {1, 0}), vec(2, {1, 0})}, GraphMode::non_orthogonality),
               PreconditionError);
  const auto o = OrthoGraph::from_vectors(basis(3, 3), GraphMode::orthogonality);
  EXPECT_EQ(o.edge_count(), 3u);
  EXPECT_EQ(o.loop_count(), 0u);
}

TEST(MaxClique, Examples) {
  EXPECT_EQ(max_clique(OrthoGraph::from_edges(5, {})).size, 1u);
  std::vector<std::pair<std::size_t, std::size_t>> k6;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) k6.emplace_back(i, j);
  EXPECT_EQ(max_clique(OrthoGraph::from_edges(6, k6)).size, 6u);
  EXPECT_EQ(max_clique(OrthoGraph::from_edges(0, {})).size, 0u);
  const auto g = OrthoGraph::from_vectors(star(3, 4), GraphMode::non_orthogonality);
  EXPECT_EQ(max_clique(g).size, 4u);
}

TEST(MaxClique, MatchesSubsetOracle) {
  std::mt19937_64 rng(1);
  for (int c = 0; c < 150; ++c) {
    const std::size_t n = rng() % 19;
    const double density = 0.1 + 0.8 * static_cast<double>(c % 9) / 8.0;
    const auto g = random_graph(rng, n, density);
    const auto r = max_clique(g);
    ASSERT_EQ(r.size, oracle::max_clique(adjacency(g))) << "case " << c;
    ASSERT_EQ(r.witness.size(), r.size);
    for (std::size_t i = 0; i < r.witness.size(); ++i)
      for (std::size_t j = i + 1; j < r.witness.size(); ++j) ASSERT_TRUE(g.adjacent(r.witness[i], r.witness[j]));
  }
}

TEST(MaxClique, IsDeterministic) {
  std::mt19937_64 rng(4);
  const auto g = random_graph(rng, 40, 0.5);
  const auto a = max_clique(g), b = max_clique(g);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(a.nodes, b.nodes);
}

TEST(MaxClique, StopAt) {
  std::mt19937_64 rng(8);
  const auto g = random_graph(rng, 30, 0.7);
  const auto full = max_clique(g);
  ASSERT_GE(full.size, 3u);
  EXPECT_GE(max_clique(g, 3).size, 3u);
}

TEST(Cliques, EnumerationCountsMatchOracle) {
  std::mt19937_64 rng(12);
  for (int c = 0; c < 30; ++c) {
    const std::size_t n = 1 + rng() % 12;
    const auto g = random_graph(rng, n, 0.5);
    const auto adj = adjacency(g);
    std::uint64_t expect = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if ((mask >> i & 1) && (mask >> j & 1) && !adj[i][j]) ok = false;
      expect += ok;
    }
    std::uint64_t seen = 0;
    EXPECT_EQ(for_each_clique(g, [&](std::span<const std::size_t>) { ++seen; }), expect);
    EXPECT_EQ(seen, expect);

    std::size_t maximal = 0, biggest = 0;
    for_each_maximal_clique(g, [&](std::span<const std::size_t> q) {
      ++maximal;
      biggest = std::max(biggest, q.size());
      for (std::size_t v = 0; v < n; ++v) {
        if (std::find(q.begin(), q.end(), v) != q.end()) continue;
        bool extends = true;
        for (auto u : q) extends = extends && adj[u][v];
        EXPECT_FALSE(extends);
      }
    });
    EXPECT_GE(maximal, 1u);
    EXPECT_EQ(biggest, max_clique(g).size);
  }
}

TEST(Independence, Examples) {
  std::vector<std::pair<std::size_t, std::size_t>> k5;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) k5.emplace_back(i, j);
  EXPECT_EQ(independence_number(OrthoGraph::from_edges(5, k5)), 1u);
  EXPECT_EQ(independence_number(OrthoGraph::from_edges(5, {})), 5u);
  EXPECT_EQ(independence_number(OrthoGraph::from_vectors(basis(2, 6), GraphMode::non_orthogonality)), 6u);
}

TEST(NearlyOrthogonal, Examples) {
  EXPECT_TRUE(is_k_nearly_orthogonal(basis(2, 5), 1).passed());
  const auto s = star(3, 3);
  const auto v = is_k_nearly_orthogonal(s, 2);
  EXPECT_EQ(v.outcome, Outcome::fail);
  EXPECT_EQ(v.witness_kind, "clique");
  EXPECT_EQ(v.witness, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(witness_revalidates(v, s, 2));
  EXPECT_TRUE(is_k_nearly_orthogonal(std::vector<FpVector>{vec(5, {1, 1})}, 1).passed());

  const std::vector<FpVector> so{vec(2, {1, 0}), vec(2, {1, 1})};
  const auto w = is_k_nearly_orthogonal(so, 3);
  EXPECT_EQ(w.witness_kind, "self_orthogonal");
  EXPECT_EQ(w.witness, std::vector<std::size_t>{1});
  EXPECT_TRUE(witness_revalidates(w, so, 3));
}

TEST(Bipartite, Examples) {
  for (std::size_t k = 2; k <= 4; ++k) EXPECT_TRUE(bipartite_check(basis(2, 6), k).passed());
  const auto s = star(3, 4);
  const auto v = bipartite_check(s, 2);
  EXPECT_EQ(v.outcome, Outcome::fail);
  EXPECT_EQ(v.witness_kind, "bipartite");
  EXPECT_EQ(v.witness.size(), 2u);
  EXPECT_EQ(v.witness2.size(), 2u);
  EXPECT_TRUE(witness_revalidates(v, s, 2));
}

TEST(Bipartite, BudgetGivesInconclusive) {
  const auto v = bipartite_check(basis(2, 30), 5, 1000);
  EXPECT_EQ(v.outcome, Outcome::inconclusive);
  EXPECT_EQ(v.witness_kind, "budget");
}

TEST(Verifiers, MatchBruteForce) {
  std::mt19937_64 rng(21);
  int cases = 0;
  for (int c = 0; c < 300; ++c) {
    const std::uint32_t p = (c % 3 == 0) ? 3 : 2;
    const PrimeModulus mod(p);
    const std::size_t dim = 3 + rng() % 3;
    const std::size_t n = 1 + rng() % 12;
    const std::size_t k = 1 + rng() % 3;
    if (n > std::pow(p, dim)) continue;
    auto set = random_distinct(rng, mod, dim, n);
    // bias toward valid inputs so both outcomes occur
    if (c % 2) std::erase_if(set, [](const FpVector& v) { return is_self_orthogonal(v); });
    if (set.empty()) continue;
    const auto raw = oracle::raw(set);
    const auto a = is_k_nearly_orthogonal(set, k);
    ASSERT_EQ(a.passed(), oracle::k_nearly_orthogonal(raw, p, k)) << "case " << c;
    ASSERT_TRUE(witness_revalidates(a, set, k));
    const auto b = bipartite_check(set, k);
    ASSERT_NE(b.outcome, Outcome::inconclusive);
    ASSERT_EQ(b.passed(), oracle::bipartite_property(raw, p, k)) << "case " << c;
    ASSERT_TRUE(witness_revalidates(b, set, k));
    if (b.passed() && k >= 2) EXPECT_TRUE(is_k_nearly_orthogonal(set, k - 1).passed());
    ++cases;
  }
  EXPECT_GE(cases, 100);
}

TEST(Dimacs, Format) {
  const auto g = OrthoGraph::from_vectors({vec(2, {1, 1, 1}), vec(2, {1, 0, 0}), vec(2, {1, 1, 0})},
                                          GraphMode::non_orthogonality);
  const auto text = to_dimacs(g);
  EXPECT_NE(text.find("p edge 3 2\n"), std::string::npos);
  EXPECT_NE(text.find("e 1 2\n"), std::string::npos);
  EXPECT_NE(text.find("c loop 1\n"), std::string::npos);
  EXPECT_EQ(text.find("c loop 3\n"), std::string::npos);
}
