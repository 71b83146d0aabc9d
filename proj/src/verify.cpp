#include "nos/verify.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

#include "nos/bigint.hpp"
#include "nos/errors.hpp"

namespace nos {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool related(Residue ip, GraphMode mode) {
  return mode == GraphMode::non_orthogonality ? ip != 0 : ip == 0;
}

class CliqueSearch {
 public:
  CliqueSearch(const OrthoGraph& g, std::size_t stop_at) : stop_at_(stop_at) {
    const std::size_t n = g.order();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return g.degree(a) > g.degree(b); });
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order_[i]] = i;
    adj_.assign(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) {
      const auto& r = g.row(order_[i]);
      for (std::size_t j = r.first(); j < n; j = r.next(j + 1)) adj_[i].set(pos[j]);
    }
  }

  CliqueResult run() {
    const std::size_t n = adj_.size();
    CliqueResult res;
    if (n > 0) {
      Bitset all(n);
      all.set_all();
      std::vector<std::size_t> current;
      expand(all, current);
    }
    res.size = best_.size();
    for (auto v : best_) res.witness.push_back(order_[v]);
    std::sort(res.witness.begin(), res.witness.end());
    res.nodes = nodes_;
    return res;
  }

 private:
  bool done() const { return stop_at_ > 0 && best_.size() >= stop_at_; }

  // Greedy sequential colouring of P in vertex order; colour classes are
  // independent sets so bounds[i] caps the clique size among order[0..i].
  void colour(const Bitset& candidates, std::vector<std::size_t>& order, std::vector<std::size_t>& bounds) const {
    Bitset uncoloured = candidates;
    std::size_t colour_index = 0;
    while (!uncoloured.none()) {
      ++colour_index;
      Bitset q = uncoloured;
      for (std::size_t v = q.first(); v < q.size(); v = q.next(v + 1)) {
        uncoloured.reset(v);
        q.subtract(adj_[v]);
        order.push_back(v);
        bounds.push_back(colour_index);
      }
    }
  }

  void expand(Bitset candidates, std::vector<std::size_t>& current) {
    ++nodes_;
    std::vector<std::size_t> order, bounds;
    colour(candidates, order, bounds);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (done() || current.size() + bounds[i] <= best_.size()) return;
      const std::size_t v = order[i];
      current.push_back(v);
      Bitset next = candidates & adj_[v];
      if (next.none()) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(std::move(next), current);
      }
      current.pop_back();
      candidates.reset(v);
    }
  }

  std::size_t stop_at_;
  std::vector<std::size_t> order_;
  std::vector<Bitset> adj_;
  std::vector<std::size_t> best_;
  std::uint64_t nodes_ = 0;
};

std::vector<FpVector> as_vector(std::span<const FpVector> set) { return {set.begin(), set.end()}; }

/// Index of the first self-orthogonal vector, or set.size().
std::size_t first_self_orthogonal(std::span<const FpVector> set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    if (is_self_orthogonal(set[i])) return i;
  return set.size();
}

}  // namespace

OrthoGraph OrthoGraph::from_vectors(std::vector<FpVector> vertices, GraphMode mode) {
  OrthoGraph g;
  g.mode_ = mode;
  const std::size_t n = vertices.size();
  for (std::size_t i = 1; i < n; ++i) require_compatible(vertices[i], vertices[0]);
  {
    std::vector<FpVector> sorted(vertices);
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) throw PreconditionError("duplicate vector " + to_string(*dup));
  }
  g.rows_.assign(n, Bitset(n));
  g.loops_.assign(n, false);
  if (n > 0 && vertices[0].p() == 2) {
    std::vector<PackedF2> packed;
    packed.reserve(n);
    for (const auto& v : vertices) packed.emplace_back(v);
    for (std::size_t i = 0; i < n; ++i) {
      g.loops_[i] = related(inner_product(packed[i], packed[i]), mode);
      for (std::size_t j = i + 1; j < n; ++j)
        if (related(inner_product(packed[i], packed[j]), mode)) {
          g.rows_[i].set(j);
          g.rows_[j].set(i);
        }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      g.loops_[i] = related(inner_product(vertices[i], vertices[i]), mode);
      for (std::size_t j = i + 1; j < n; ++j)
        if (related(inner_product(vertices[i], vertices[j]), mode)) {
          g.rows_[i].set(j);
          g.rows_[j].set(i);
        }
    }
  }
  g.vertices_ = std::move(vertices);
  return g;
}

OrthoGraph OrthoGraph::from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges,
                                  std::vector<bool> loops) {
  OrthoGraph g;
  g.rows_.assign(n, Bitset(n));
  g.loops_ = loops.empty() ? std::vector<bool>(n, false) : std::move(loops);
  if (g.loops_.size() != n) throw ContractViolation("loop flag count differs from vertex count");
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw ContractViolation("edge endpoint out of range");
    if (a == b) {
      g.loops_[a] = true;
      continue;
    }
    g.rows_[a].set(b);
    g.rows_[b].set(a);
  }
  return g;
}

std::size_t OrthoGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.count();
  return total / 2;
}

std::size_t OrthoGraph::loop_count() const {
  return static_cast<std::size_t>(std::count(loops_.begin(), loops_.end(), true));
}

OrthoGraph OrthoGraph::complement() const {
  OrthoGraph g;
  g.mode_ = mode_ == GraphMode::non_orthogonality ? GraphMode::orthogonality : GraphMode::non_orthogonality;
  g.vertices_ = vertices_;
  const std::size_t n = order();
  g.rows_.assign(n, Bitset(n));
  g.loops_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.rows_[i].set_all();
    g.rows_[i].subtract(rows_[i]);
    g.rows_[i].reset(i);
    g.loops_[i] = !loops_[i];
  }
  return g;
}

OrthoGraph OrthoGraph::induced(std::span<const std::size_t> keep) const {
  OrthoGraph g;
  g.mode_ = mode_;
  const std::size_t n = keep.size();
  g.rows_.assign(n, Bitset(n));
  g.loops_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (keep[a] >= order()) throw ContractViolation("induced vertex out of range");
    g.loops_[a] = loops_[keep[a]];
    if (!vertices_.empty()) g.vertices_.push_back(vertices_[keep[a]]);
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && rows_[keep[a]].test(keep[b])) g.rows_[a].set(b);
  }
  return g;
}

CliqueResult max_clique(const OrthoGraph& g, std::size_t stop_at) {
  if (g.order() > kMaxCliqueVertices) throw GuardrailExceeded("clique search limited to 10^4 vertices");
  return CliqueSearch(g, stop_at).run();
}

std::uint64_t for_each_clique(const OrthoGraph& g, const std::function<void(std::span<const std::size_t>)>& fn) {
  const std::size_t n = g.order();
  std::vector<std::size_t> current;
  std::uint64_t visited = 0;
  // each clique is reached once, by adding its vertices in increasing order
  auto extend = [&](auto&& self, const Bitset& candidates) -> void {
    ++visited;
    fn(current);
    for (std::size_t v = candidates.first(); v < n; v = candidates.next(v + 1)) {
      Bitset next = candidates & g.row(v);
      for (std::size_t u = next.first(); u <= v && u < n; u = next.next(u + 1)) next.reset(u);
      current.push_back(v);
      self(self, next);
      current.pop_back();
    }
  };
  Bitset all(n);
  all.set_all();
  extend(extend, all);
  return visited;
}

void for_each_maximal_clique(const OrthoGraph& g, const std::function<void(std::span<const std::size_t>)>& fn) {
  const std::size_t n = g.order();
  std::vector<std::size_t> current;
  auto bk = [&](auto&& self, Bitset candidates, Bitset excluded) -> void {
    if (candidates.none() && excluded.none()) {
      std::vector<std::size_t> sorted(current);
      std::sort(sorted.begin(), sorted.end());
      fn(sorted);
      return;
    }
    // pivot maximising |candidates & N(u)| over candidates and excluded
    std::size_t pivot = n;
    std::size_t best = 0;
    for (const Bitset* pool : {&candidates, &excluded})
      for (std::size_t u = pool->first(); u < n; u = pool->next(u + 1)) {
        const std::size_t c = candidates.intersection_count(g.row(u));
        if (pivot == n || c > best) {
          pivot = u;
          best = c;
        }
      }
    Bitset branch = candidates;
    branch.subtract(g.row(pivot));
    for (std::size_t v = branch.first(); v < n; v = branch.next(v + 1)) {
      current.push_back(v);
      self(self, candidates & g.row(v), excluded & g.row(v));
      current.pop_back();
      candidates.reset(v);
      excluded.set(v);
    }
  };
  if (n == 0) {
    fn(current);
    return;
  }
  Bitset all(n);
  all.set_all();
  bk(bk, all, Bitset(n));
}

std::size_t independence_number(const OrthoGraph& g) { return max_clique(g.complement()).size; }

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::pass:
      return "PASS";
    case Outcome::fail:
      return "FAIL";
    case Outcome::inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

Verdict is_k_nearly_orthogonal(std::span<const FpVector> set, std::size_t k) {
  const auto start = Clock::now();
  Verdict v;
  if (k == 0) throw PreconditionError("k must be at least 1");
  auto graph = OrthoGraph::from_vectors(as_vector(set), GraphMode::non_orthogonality);
  if (auto i = first_self_orthogonal(set); i < set.size()) {
    v.outcome = Outcome::fail;
    v.witness_kind = "self_orthogonal";
    v.witness = {i};
    v.detail = "vector " + std::to_string(i) + " is self-orthogonal";
  } else {
    auto clique = max_clique(graph, k + 1);
    v.nodes = clique.nodes;
    if (clique.size > k) {
      v.outcome = Outcome::fail;
      v.witness_kind = "clique";
      v.witness = clique.witness;
      v.detail = std::to_string(clique.size) + " pairwise non-orthogonal vectors";
    } else {
      v.outcome = Outcome::pass;
      v.detail = "maximum clique " + std::to_string(clique.size);
    }
  }
  v.elapsed_ms = ms_since(start);
  return v;
}

Verdict bipartite_check(std::span<const FpVector> set, std::size_t k, std::uint64_t subset_budget) {
  const auto start = Clock::now();
  if (k == 0) throw PreconditionError("k must be at least 1");
  Verdict v;
  auto graph = OrthoGraph::from_vectors(as_vector(set), GraphMode::non_orthogonality);
  const std::size_t n = graph.order();
  if (auto i = first_self_orthogonal(set); i < n) {
    v.outcome = Outcome::fail;
    v.witness_kind = "self_orthogonal";
    v.witness = {i};
    v.detail = "vector " + std::to_string(i) + " is self-orthogonal";
    v.elapsed_ms = ms_since(start);
    return v;
  }
  if (binomial(n, k) > subset_budget) {
    v.outcome = Outcome::inconclusive;
    v.witness_kind = "budget";
    v.detail = "C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds the subset budget of " +
               std::to_string(subset_budget);
    v.elapsed_ms = ms_since(start);
    return v;
  }

  std::vector<Bitset> closed(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) {
    closed[i] = graph.row(i);
    if (graph.loop(i)) closed[i].set(i);
  }

  std::vector<std::size_t> chosen;
  bool failed = false;
  // N*(prefix) only shrinks as the prefix grows, so a prefix whose common
  // neighbourhood is already below k cannot extend to a failing G1.
  auto search = [&](auto&& self, std::size_t from, const Bitset& common) -> void {
    ++v.nodes;
    if (common.count() < k) return;
    if (chosen.size() == k) {
      failed = true;
      v.witness = chosen;
      auto members = common.indices();
      v.witness2.assign(members.begin(), members.begin() + static_cast<std::ptrdiff_t>(k));
      return;
    }
    const std::size_t need = k - chosen.size();
    for (std::size_t i = from; i + need <= n && !failed; ++i) {
      chosen.push_back(i);
      self(self, i + 1, common & closed[i]);
      chosen.pop_back();
    }
  };
  if (k <= n) {
    Bitset all(n);
    all.set_all();
    search(search, 0, all);
  }
  if (failed) {
    v.outcome = Outcome::fail;
    v.witness_kind = "bipartite";
    v.detail = "k-subsets with no orthogonal cross pair";
  } else {
    v.outcome = Outcome::pass;
  }
  v.elapsed_ms = ms_since(start);
  return v;
}

bool witness_revalidates(const Verdict& v, std::span<const FpVector> set, std::size_t k) {
  if (v.outcome != Outcome::fail) return true;
  auto in_range = [&](const std::vector<std::size_t>& idx) {
    return std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return i < set.size(); });
  };
  if (!in_range(v.witness) || !in_range(v.witness2)) return false;
  // repeat counts are a property of the sample sequence, not the set
  if (v.witness_kind == "multiplicity") return v.witness.size() == 1;
  if (v.witness_kind == "self_orthogonal")
    return v.witness.size() == 1 && is_self_orthogonal(set[v.witness[0]]);
  if (v.witness_kind == "clique") {
    if (v.witness.size() < k + 1) return false;
    for (std::size_t a = 0; a < v.witness.size(); ++a)
      for (std::size_t b = a + 1; b < v.witness.size(); ++b) {
        if (v.witness[a] == v.witness[b]) return false;
        if (orthogonal(set[v.witness[a]], set[v.witness[b]])) return false;
      }
    return true;
  }
  if (v.witness_kind == "bipartite") {
    auto distinct = [](std::vector<std::size_t> idx) {
      std::sort(idx.begin(), idx.end());
      return std::adjacent_find(idx.begin(), idx.end()) == idx.end();
    };
    if (v.witness.size() != k || v.witness2.size() != k) return false;
    if (!distinct(v.witness) || !distinct(v.witness2)) return false;
    for (auto a : v.witness)
      for (auto b : v.witness2)
        if (orthogonal(set[a], set[b])) return false;
    return true;
  }
  return false;
}

std::string to_dimacs(const OrthoGraph& g) {
  std::ostringstream os;
  os << (g.mode() == GraphMode::orthogonality ? "c orthogonality graph\n" : "c non-orthogonality graph\n");
  for (std::size_t i = 0; i < g.order(); ++i)
    if (g.loop(i)) os << "c loop " << i + 1 << '\n';
  os << "p edge " << g.order() << ' ' << g.edge_count() << '\n';
  for (std::size_t i = 0; i < g.order(); ++i) {
    const auto& r = g.row(i);
    for (std::size_t j = r.next(i + 1); j < g.order(); j = r.next(j + 1)) os << "e " << i + 1 << ' ' << j + 1 << '\n';
  }
  return os.str();
}

}  // namespace nos
