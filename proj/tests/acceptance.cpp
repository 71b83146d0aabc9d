// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Usage: acceptance [path-to-nos-binary]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "nos/analysis.hpp"
#include "nos/construction.hpp"
#include "nos/covers.hpp"
#include "nos/spectral.hpp"
#include "nos/tensor.hpp"
#include "nos/verify.hpp"
#include "oracle.hpp"

using namespace nos;
namespace fs = std::filesystem;

namespace {

constexpr double kTolerance = 1e-6;  // eigenvalue and mixing comparisons

struct Check {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) detail = what;
    pass = pass && cond;
  }
};

std::string binary_path;

// every (k+1)-subset contains an orthogonal pair, by direct enumeration
bool no_large_clique(const std::vector<oracle::Vec>& vs, long long p, std::size_t k) {
  const std::size_t n = vs.size(), r = k + 1;
  if (r > n) return true;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    bool clique = true;
    for (std::size_t a = 0; a < r && clique; ++a)
      for (std::size_t b = a + 1; b < r && clique; ++b)
        if (oracle::dot(vs[idx[a]], vs[idx[b]], p) == 0) clique = false;
    if (clique) return false;
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// |N*(G1)| < k for every k-subset G1, N* counting vectors non-orthogonal to all of G1
bool no_large_biclique(const std::vector<oracle::Vec>& vs, long long p, std::size_t k) {
  const std::size_t n = vs.size();
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::size_t common = 0;
    for (const auto& v : vs) {
      bool all = true;
      for (auto i : idx) all = all && oracle::dot(v, vs[i], p) != 0;
      common += all;
    }
    if (common >= k) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool all_non_self_orthogonal(const std::vector<oracle::Vec>& vs, long long p) {
  for (const auto& v : vs)
    if (oracle::dot(v, v, p) == 0) return false;
  return true;
}

std::vector<oracle::Vec> span_members(const SubspaceBasis& w) {
  const long long p = w.modulus().value();
  std::set<oracle::Vec> out{oracle::Vec(w.ambient_dim(), 0)};
  for (const auto& row : w.rows()) {
    std::set<oracle::Vec> next;
    const auto r = oracle::raw(row);
    for (const auto& x : out)
      for (long long c = 0; c < p; ++c) {
        auto y = x;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = (y[i] + c * r[i]) % p;
        next.insert(y);
      }
    out = std::move(next);
  }
  return {out.begin(), out.end()};
}

// ---- criteria

Check c1_v_count() {
  Check c;
  for (std::size_t t = 1; t <= 16; ++t) {
    const auto n = enumerate_V(PrimeModulus(2), t, true).size();
    c.require(n == (std::size_t{1} << (t - 1)), "t=" + std::to_string(t) + " |V|=" + std::to_string(n));
  }
  return c;
}

Check c2_tensor() {
  Check c;
  std::mt19937_64 rng(2024);
  std::size_t cases = 0;
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int i = 0; i < 400; ++i) {
      const PrimeModulus mod(p);
      const std::size_t t = 1 + rng() % 4, m = 1 + rng() % 3;
      std::vector<FpVector> a, b;
      long long expect = 1;
      oracle::Vec ka, kb;
      for (std::size_t j = 0; j < m; ++j) {
        std::vector<Residue> ea(t), eb(t);
        for (auto& x : ea) x = static_cast<Residue>(rng() % p);
        for (auto& x : eb) x = static_cast<Residue>(rng() % p);
        a.emplace_back(mod, ea);
        b.emplace_back(mod, eb);
        expect = expect * oracle::dot(oracle::raw(a.back()), oracle::raw(b.back()), p) % p;
        ka = j ? oracle::kron(ka, oracle::raw(a.back()), p) : oracle::raw(a.back());
        kb = j ? oracle::kron(kb, oracle::raw(b.back()), p) : oracle::raw(b.back());
      }
      const auto ta = tensor_many(a).product(), tb = tensor_many(b).product();
      c.require(oracle::raw(ta) == ka && oracle::raw(tb) == kb, "product differs from Kronecker oracle");
      c.require(static_cast<long long>(inner_product(ta, tb)) == expect, "inner product not multiplicative");
      c.require(oracle::dot(ka, kb, p) == expect, "oracle identity broken");
      ++cases;
    }
  c.require(cases >= 1000, "too few cases");
  c.detail = c.pass ? std::to_string(cases) + " cases" : c.detail;
  return c;
}

Check c3_box() {
  Check c;
  std::size_t boxes = 0;
  for (std::uint32_t p : {2u, 3u}) {
    const PrimeModulus mod(p);
    std::vector<FpVector> lead;
    for (const auto& v : all_vectors(mod, 2))
      if (has_leading_one(v)) lead.push_back(v);
    const std::size_t L = lead.size();
    for (std::uint32_t m1 = 0; m1 < (1u << L); ++m1)
      for (std::uint32_t m2 = 0; m2 < (1u << L); ++m2) {
        std::vector<FpVector> a1, a2;
        for (std::size_t i = 0; i < L; ++i) {
          if (m1 >> i & 1) a1.push_back(lead[i]);
          if (m2 >> i & 1) a2.push_back(lead[i]);
        }
        std::set<oracle::Vec> distinct;
        for (const auto& x : a1)
          for (const auto& y : a2) distinct.insert(oracle::kron(oracle::raw(x), oracle::raw(y), p));
        ProductBox box({a1, a2});
        const auto formula = box_size(box);
        c.require(formula == a1.size() * a2.size(), "box_size is not the product of factor sizes");
        c.require(formula == distinct.size(), "distinct products differ from the product formula");
        c.require(materialize(box).size() == distinct.size(), "materialize disagrees");
        ++boxes;
      }
  }
  if (c.pass) c.detail = std::to_string(boxes) + " boxes";
  return c;
}

Check c4_cover() {
  Check c;
  std::size_t sets = 0;
  for (std::size_t t = 1; t <= 5; ++t) {
    const std::size_t h = (t + 1) / 2;
    const auto V = enumerate_V(PrimeModulus(2), t, false);
    const auto g = OrthoGraph::from_vectors(V, GraphMode::non_orthogonality);
    for_each_maximal_clique(g, [&](std::span<const std::size_t> q) {
      std::vector<FpVector> a;
      for (auto i : q) a.push_back(V[i]);
      const auto cover = extend_to_dimension(f2_cover_of(a, t), h);
      c.require(cover.rank() == h, "cover dimension is not floor((t+1)/2)");
      const auto members = span_members(cover);
      const std::set<oracle::Vec> in(members.begin(), members.end());
      for (const auto& v : a) c.require(in.count(oracle::raw(v)) == 1, "set member outside its cover");
      c.require(a.size() <= (std::size_t{1} << h), "maximal set larger than 2^floor((t+1)/2)");
      ++sets;
    });
  }
  if (c.pass) c.detail = std::to_string(sets) + " maximal sets";
  return c;
}

Check c5_gmap() {
  Check c;
  for (auto [p, t] : std::vector<std::pair<std::uint32_t, std::size_t>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
    const PrimeModulus mod(p);
    const auto r = g_inner_identity_check(mod, t);
    c.require(r.ok(), "g identity violated at p=" + std::to_string(p) + " t=" + std::to_string(t));
    // independent recomputation
    const auto vs = all_vectors(mod, t);
    for (const auto& u : vs)
      for (const auto& v : vs) {
        auto gu = oracle::raw(u), gv = oracle::raw(v);
        for (std::uint32_t j = 1; j + 1 < p; ++j) {
          gu = oracle::kron(gu, oracle::raw(u), p);
          gv = oracle::kron(gv, oracle::raw(v), p);
        }
        gu.insert(gu.end(), p - 1, 1);
        gv.insert(gv.end(), p - 1, 1);
        c.require(oracle::raw(g_map(u)) == gu, "g_map differs from oracle");
        const long long base = oracle::dot(oracle::raw(u), oracle::raw(v), p);
        long long pw = 1;
        for (std::uint32_t j = 0; j + 1 < p; ++j) pw = pw * base % p;
        const long long lifted = oracle::dot(gu, gv, p);
        c.require(lifted == (pw + p - 1) % p, "oracle identity");
        c.require((base == 0) == (lifted != 0), "oracle biconditional");
      }
  }
  return c;
}

Check c6_spectrum() {
  Check c;
  std::ostringstream worst;
  for (auto [p, t] : std::vector<std::pair<std::uint32_t, std::size_t>>{{2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 2}, {3, 3}, {5, 2}}) {
    const auto g = build_Gpt(PrimeModulus(p), t);
    const auto n = static_cast<std::size_t>(std::pow(p, t)) - 1;
    const auto d = static_cast<std::size_t>(std::pow(p, t - 1)) - 1;
    c.require(g.order() == n, "wrong vertex count");
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t deg = 0;
      for (std::size_t j = 0; j < n; ++j) deg += oracle::dot(oracle::raw(g.vertices[i]), oracle::raw(g.vertices[j]), p) == 0;
      c.require(deg == d, "graph is not regular of the expected degree");
    }
    const auto r = spectrum(g);
    const double bound = (p - 1) * std::pow(p, t / 2.0 - 1);
    c.require(std::abs(r.top - static_cast<double>(d)) <= kTolerance, "top eigenvalue is not the degree");
    c.require(r.lambda_max_abs_rest <= bound + kTolerance,
              "(" + std::to_string(p) + "," + std::to_string(t) + ") lambda " + std::to_string(r.lambda_max_abs_rest));
    worst << "(" << p << "," << t << "):" << r.lambda_max_abs_rest << "/" << bound << " ";
  }
  if (c.pass) c.detail = worst.str();
  return c;
}

Check c7_mixing() {
  Check c;
  std::mt19937_64 rng(7);
  for (auto [p, t] : std::vector<std::pair<std::uint32_t, std::size_t>>{{3, 2}, {2, 4}}) {
    const auto g = build_Gpt(PrimeModulus(p), t);
    const double lambda = spectrum(g).lambda_max_abs_rest;
    const double n = static_cast<double>(g.order());
    for (int s = 0; s < 1000; ++s) {
      std::vector<std::size_t> c1, c2;
      for (std::size_t v = 0; v < g.order(); ++v) {
        if (rng() % 2) c1.push_back(v);
        if (rng() % 2) c2.push_back(v);
      }
      long long e = 0;
      for (auto a : c1)
        for (auto b : c2) e += oracle::dot(oracle::raw(g.vertices[a]), oracle::raw(g.vertices[b]), p) == 0;
      const double prod = static_cast<double>(c1.size() * c2.size());
      const double dev = std::abs(static_cast<double>(e) - static_cast<double>(g.degree) / n * prod);
      const auto r = mixing_check(g, c1, c2, lambda);
      c.require(r.edges == static_cast<std::uint64_t>(e), "edge count differs from oracle");
      c.require(dev <= lambda * std::sqrt(prod) + kTolerance && r.holds, "mixing inequality violated");
    }
  }
  return c;
}

Check c8_cross() {
  Check c;
  std::ostringstream info;
  for (auto [p, t] : std::vector<std::pair<std::uint32_t, std::size_t>>{{2, 3}, {3, 2}}) {
    const auto r = cross_product_bound_check(PrimeModulus(p), t);
    c.require(r.mode == "exhaustive" && r.holds(), "cross bound violated");
    // oracle: best partner of C1 is its full common non-orthogonal neighbourhood
    std::vector<oracle::Vec> vs;
    for (const auto& v : all_vectors(PrimeModulus(p), t))
      if (!v.is_zero()) vs.push_back(oracle::raw(v));
    const std::size_t n = vs.size();
    std::uint64_t best = 0;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      std::uint64_t common = 0;
      for (std::size_t j = 0; j < n; ++j) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
          if ((m >> i & 1) && oracle::dot(vs[i], vs[j], p) == 0) ok = false;
        common += ok;
      }
      best = std::max<std::uint64_t>(best, static_cast<std::uint64_t>(__builtin_popcount(m)) * common);
    }
    const auto bound = static_cast<std::uint64_t>(std::pow(p, t + 2));
    c.require(best == r.max_product, "maximum product differs from oracle");
    c.require(best <= bound, "oracle maximum exceeds p^{t+2}");
    info << "(" << p << "," << t << "):" << best << "<=" << bound << " ";
  }
  if (c.pass) c.detail = info.str();
  return c;
}

Check c9_build_clique() {
  Check c;
  ConstructionParams params;
  params.p = PrimeModulus(2);
  params.t = 5;
  params.m = 2;
  params.n = 32;
  params.k = 4;
  params.d = 25;
  const auto run = build(params, 1, 20);
  c.require(run.verdict.passed(), "no PASS within 20 retries");
  c.require(run.result.size() >= 8, "result smaller than n/k");
  const auto raw = oracle::raw(run.result);
  c.require(std::set<oracle::Vec>(raw.begin(), raw.end()).size() == raw.size(), "duplicate vectors");
  c.require(all_non_self_orthogonal(raw, 2) && no_large_clique(raw, 2, 4), "independent re-verification failed");
  if (c.pass)
    c.detail = "retries=" + std::to_string(run.retries_used) + " size=" + std::to_string(run.result.size());
  return c;
}

Check c9_build_bipartite() {
  Check c;
  ConstructionParams params;
  params.p = PrimeModulus(2);
  params.t = 5;
  params.m = 2;
  params.n = 32;
  params.k = 5;
  params.d = 25;
  params.mode = BuildMode::bipartite;
  const auto run = build(params, 1, 50);
  c.require(run.verdict.passed(), "no PASS within 50 retries");
  const auto raw = oracle::raw(run.result);
  c.require(all_non_self_orthogonal(raw, 2) && no_large_biclique(raw, 2, 5), "independent re-verification failed");
  if (c.pass)
    c.detail = "retries=" + std::to_string(run.retries_used) + " size=" + std::to_string(run.result.size());
  return c;
}

Check c10_count() {
  Check c;
  std::size_t pairs = 0;
  std::ostringstream info;
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u})
    for (std::size_t t = 1; std::pow(p, t) <= 64; ++t) {
      std::size_t candidates = 0, largest = 0;
      // oracle refuses nothing, so check the candidate count first
      std::size_t nso = 0;
      for (const auto& v : all_vectors(PrimeModulus(p), t)) nso += !is_self_orthogonal(v);
      if (nso > 16) continue;
      const auto expect = oracle::count_pairwise_nonorth(p, t, &candidates, &largest);
      const auto r = count_Npt(PrimeModulus(p), t);
      c.require(r.candidates == candidates, "candidate count differs");
      c.require(r.total_sets == expect, "count differs at p=" + std::to_string(p) + " t=" + std::to_string(t));
      c.require(pow_big(2, r.lower_bound_witness.size()) <= r.total_sets, "2^|B| exceeds total");
      ++pairs;
      info << "(" << p << "," << t << ")";
    }
  if (c.pass) c.detail = std::to_string(pairs) + " pairs " + info.str();
  return c;
}

Check c11_ramsey() {
  Check c;
  std::size_t verified = 0;
  for (std::size_t t = 3; t <= 5; ++t)
    for (std::size_t m = 1; m <= 2; ++m)
      for (std::size_t k = 2; k <= 5; ++k)
        for (std::uint64_t seed = 1; seed <= 3; ++seed)
          for (auto mode : {BuildMode::clique, BuildMode::bipartite}) {
            ConstructionParams params;
            params.p = PrimeModulus(2);
            params.t = t;
            params.m = m;
            params.n = 24;
            params.k = k;
            params.d = params.product_dim();
            params.mode = mode;
            const auto run = build(params, seed, 30);
            if (!run.verdict.passed()) continue;
            c.require(BigInt(run.result.size()) < ramsey_bound(params.d, params.k), "Ramsey bound violated");
            ++verified;
          }
  for (std::size_t d = 1; d <= 40; ++d) c.require(BigInt(d) < ramsey_bound(d, 1), "standard basis violates bound");
  c.require(verified > 0, "no verified sets");
  if (c.pass) c.detail = std::to_string(verified) + " verified sets";
  return c;
}

Check c12_verifiers() {
  Check c;
  std::mt19937_64 rng(12);
  std::size_t cases = 0, passes = 0;
  while (cases < 300) {
    const std::uint32_t p = cases % 3 ? 2 : 3;
    const PrimeModulus mod(p);
    const std::size_t dim = 3 + rng() % 3, n = 1 + rng() % 12, k = 1 + rng() % 3;
    std::vector<FpVector> set;
    std::set<oracle::Vec> seen;
    for (int tries = 0; set.size() < n && tries < 1000; ++tries) {
      std::vector<Residue> e(dim);
      for (auto& x : e) x = static_cast<Residue>(rng() % p);
      FpVector v(mod, e);
      if (cases % 2 && is_self_orthogonal(v)) continue;
      if (seen.insert(oracle::raw(v)).second) set.push_back(v);
    }
    const auto raw = oracle::raw(set);
    const auto a = is_k_nearly_orthogonal(set, k);
    const auto b = bipartite_check(set, k);
    c.require(a.passed() == oracle::k_nearly_orthogonal(raw, p, k), "clique verifier disagrees with oracle");
    c.require(b.passed() == oracle::bipartite_property(raw, p, k), "bipartite verifier disagrees with oracle");
    c.require(witness_revalidates(a, set, k) && witness_revalidates(b, set, k), "witness does not re-validate");
    passes += a.passed() + b.passed();
    ++cases;
  }
  if (c.pass) c.detail = std::to_string(cases) + " instances, " + std::to_string(passes) + " passing verdicts";
  return c;
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Check c13_determinism() {
  Check c;
  if (binary_path.empty()) {
    c.require(false, "nos binary path not given");
    return c;
  }
  const fs::path root = fs::temp_directory_path() / "nos_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::string> docs;
  for (const char* name : {"first", "second"}) {
    const fs::path out = root / name;
    const std::string cmd = "\"" + binary_path + "\" --out \"" + out.string() +
                            "\" construct --p 2 --t 5 --m 2 --n 32 --k 4 --seed 1 > /dev/null 2>&1";
    c.require(std::system(cmd.c_str()) == 0, "construct did not exit 0");
    if (!fs::exists(out)) break;
    for (const auto& e : fs::directory_iterator(out)) docs.push_back(read_all(e.path() / "run.json"));
  }
  c.require(docs.size() == 2, "expected one run directory per invocation");
  if (docs.size() == 2) c.require(!docs[0].empty() && docs[0] == docs[1], "run.json differs between invocations");
  fs::remove_all(root);
  if (c.pass) c.detail = std::to_string(docs[0].size()) + " identical bytes";
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) binary_path = argv[1];
  struct Criterion {
    const char* name;
    std::function<Check()> run;
    double limit_s;  // 0: no runtime limit
  };
  const std::vector<Criterion> criteria{
      {"1  |V(2,t)| = 2^{t-1}, t = 1..16", c1_v_count, 1},
      {"2  tensor inner products multiply", c2_tensor, 0},
      {"3  box size equals product of factor sizes", c3_box, 0},
      {"4  maximal non-orthogonal sets lie in half-dimension covers", c4_cover, 10},
      {"5  g-map identity and biconditional", c5_gmap, 0},
      {"6  G(p,t) regular with non-principal spectrum within bound", c6_spectrum, 60},
      {"7  expander mixing on random subset pairs", c7_mixing, 0},
      {"8  cross product bound, exhaustive", c8_cross, 30},
      {"9a clique-mode build p=2 t=5 m=2 n=32 k=4 seed=1", c9_build_clique, 60},
      {"9b bipartite-mode build k=5", c9_build_bipartite, 60},
      {"10 pairwise non-orthogonal set counts match oracle", c10_count, 0},
      {"11 verified sets below C(d+k,k)", c11_ramsey, 0},
      {"12 verifiers agree with brute-force oracles", c12_verifiers, 0},
      {"13 identical seeds give byte-identical run JSON", c13_determinism, 0},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit_s > 0 && secs >= cr.limit_s) {
      c.pass = false;
      c.detail += " (over the " + std::to_string(static_cast<int>(cr.limit_s)) + " s limit)";
    }
    failures += !c.pass;
    std::printf("[%s] %-62s %8.3f s  %s\n", c.pass ? "PASS" : "FAIL", cr.name, secs, c.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures ? 1 : 0;
}
