#include "nos/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "nos/bigint.hpp"
#include "nos/errors.hpp"
#include "nos/rng.hpp"

namespace nos {

std::size_t SpectralGraph::loop_count() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < order(); ++i) c += adjacent(i, i) ? 1 : 0;
  return c;
}

SpectralGraph build_Gpt(PrimeModulus p, std::size_t t) {
  if (t == 0) throw PreconditionError("t must be at least 1");
  if (pow_big(p.value(), t) - 1 > kMaxSpectralOrder) throw GuardrailExceeded("G(p,t) limited to 4096 vertices");
  SpectralGraph g;
  g.p = p.value();
  g.t = t;
  for (auto& v : all_vectors(p, t))
    if (!v.is_zero()) g.vertices.push_back(std::move(v));
  const std::size_t n = g.order();
  g.adjacency.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (orthogonal(g.vertices[i], g.vertices[j])) g.adjacency[i * n + j] = g.adjacency[j * n + i] = 1;

  g.degree = pow_big(p.value(), t - 1).convert_to<std::size_t>() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = std::span(g.adjacency).subspan(i * n, n);
    const auto deg = static_cast<std::size_t>(std::count(row.begin(), row.end(), std::uint8_t{1}));
    if (deg != g.degree)
      throw InternalError("G(" + std::to_string(p.value()) + "," + std::to_string(t) + ") vertex " +
                          std::to_string(i) + " has degree " + std::to_string(deg));
  }
  return g;
}

std::string to_dimacs(const SpectralGraph& g) {
  const std::size_t n = g.order();
  std::ostringstream os;
  os << "c G(" << g.p << "," << g.t << ") orthogonality graph\n";
  std::size_t edges = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (g.adjacent(i, i)) os << "c loop " << i + 1 << '\n';
    for (std::size_t j = i + 1; j < n; ++j) edges += g.adjacent(i, j) ? 1 : 0;
  }
  os << "p edge " << n << ' ' << edges << '\n';
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.adjacent(i, j)) os << "e " << i + 1 << ' ' << j + 1 << '\n';
  return os.str();
}

std::string to_matrix_text(const SpectralGraph& g) {
  const std::size_t n = g.order();
  std::string out;
  out.reserve(n * n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out += ' ';
      out += g.adjacent(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

JacobiResult jacobi_eigenvalues(std::vector<double> a, std::size_t n, double rel_tol, std::size_t max_sweeps) {
  if (a.size() != n * n) throw ContractViolation("matrix storage does not match n x n");
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  auto off_norm = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += at(i, j) * at(i, j);
    return std::sqrt(s);
  };
  double total = 0;
  for (double x : a) total += x * x;
  const double threshold = rel_tol * std::sqrt(total);

  JacobiResult res;
  while (off_norm() >= threshold && threshold > 0) {
    if (res.sweeps == max_sweeps) throw NumericalError("Jacobi iteration did not converge");
    ++res.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double tan = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(tan * tan + 1.0);
        const double s = tan * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  res.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.eigenvalues[i] = at(i, i);
  std::sort(res.eigenvalues.begin(), res.eigenvalues.end());
  return res;
}

SpectrumReport spectrum(const SpectralGraph& g) {
  const std::size_t n = g.order();
  if (n > kMaxSpectralOrder) throw GuardrailExceeded("dense spectrum limited to 4096 vertices");
  std::vector<double> m(g.adjacency.begin(), g.adjacency.end());
  auto eig = jacobi_eigenvalues(std::move(m), n);

  SpectrumReport r;
  r.p = g.p;
  r.t = g.t;
  r.order = n;
  r.degree = g.degree;
  r.eigenvalues = std::move(eig.eigenvalues);
  r.sweeps = eig.sweeps;
  for (double x : r.eigenvalues) r.trace += x;
  if (n > 0) {
    r.top = r.eigenvalues.back();
    for (std::size_t i = 0; i + 1 < n; ++i) r.lambda_max_abs_rest = std::max(r.lambda_max_abs_rest, std::abs(r.eigenvalues[i]));
  }
  r.lambda_bound = (g.p - 1.0) * std::pow(static_cast<double>(g.p), static_cast<double>(g.t) / 2.0 - 1.0);
  r.pass = r.lambda_max_abs_rest <= r.lambda_bound + kBoundTolerance;
  return r;
}

MixingReport mixing_check(const SpectralGraph& g, std::span<const std::size_t> c1, std::span<const std::size_t> c2,
                          double lambda) {
  const std::size_t n = g.order();
  for (auto i : c1)
    if (i >= n) throw ContractViolation("vertex index out of range");
  for (auto i : c2)
    if (i >= n) throw ContractViolation("vertex index out of range");
  MixingReport r;
  r.size1 = c1.size();
  r.size2 = c2.size();
  for (auto x1 : c1)
    for (auto x2 : c2) r.edges += g.adjacent(x1, x2) ? 1 : 0;
  const double product = static_cast<double>(r.size1) * static_cast<double>(r.size2);
  r.expected = n ? static_cast<double>(g.degree) / static_cast<double>(n) * product : 0.0;
  r.deviation = std::abs(static_cast<double>(r.edges) - r.expected);
  r.bound = lambda * std::sqrt(product);
  r.holds = r.deviation <= r.bound + kBoundTolerance;
  return r;
}

CrossBoundReport cross_product_bound_check(PrimeModulus p, std::size_t t, std::uint64_t seed, std::size_t restarts) {
  if (t < 2) throw PreconditionError("the cross bound is stated for t >= 2");
  CrossBoundReport r;
  r.p = p.value();
  r.t = t;
  r.bound = pow_big(p.value(), t + 2).convert_to<std::uint64_t>();

  std::vector<FpVector> vs;
  for (auto& v : all_vectors(p, t))
    if (!v.is_zero()) vs.push_back(std::move(v));
  const std::size_t n = vs.size();

  auto record = [&](std::uint64_t product, const auto& members1, const auto& members2) {
    if (product > r.bound) ++r.violations;
    if (product <= r.max_product) return;
    r.max_product = product;
    r.best1.clear();
    r.best2.clear();
    for (auto i : members1) r.best1.push_back(vs[i]);
    for (auto i : members2) r.best2.push_back(vs[i]);
  };

  if (n + 1 <= 12) {
    r.mode = "exhaustive";
    std::vector<std::uint32_t> nonorth(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!orthogonal(vs[i], vs[j])) nonorth[i] |= 1u << j;
    const std::uint32_t full = (1u << n) - 1;
    auto bits = [&](std::uint32_t mask) {
      std::vector<std::size_t> out;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1u) out.push_back(i);
      return out;
    };
    for (std::uint32_t m1 = 0; m1 <= full; ++m1) {
      std::uint32_t common = full;
      for (std::size_t i = 0; i < n; ++i)
        if (m1 >> i & 1u) common &= nonorth[i];
      const auto s1 = static_cast<std::uint64_t>(std::popcount(m1));
      for (std::uint32_t m2 = 0; m2 <= full; ++m2) {
        ++r.pairs_checked;
        if (m2 & ~common) continue;
        const std::uint64_t product = s1 * static_cast<std::uint64_t>(std::popcount(m2));
        if (product > r.bound || product > r.max_product) record(product, bits(m1), bits(m2));
      }
    }
    return r;
  }

  r.mode = "randomized";
  std::vector<Bitset> nonorth(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (!orthogonal(vs[i], vs[j])) {
        nonorth[i].set(j);
        nonorth[j].set(i);
      }
  auto common_of = [&](const Bitset& s) {
    Bitset c(n);
    c.set_all();
    for (std::size_t i = s.first(); i < n; i = s.next(i + 1)) c &= nonorth[i];
    return c;
  };
  RandomStream rng(seed);
  for (std::size_t attempt = 0; attempt < restarts; ++attempt) {
    Bitset c1(n);
    c1.set(rng.uniform_below(n));
    if (rng.uniform_below(2)) c1.set(rng.uniform_below(n));
    for (int round = 0; round < 16; ++round) {
      Bitset c2 = common_of(c1);
      ++r.pairs_checked;
      record(static_cast<std::uint64_t>(c1.count()) * c2.count(), c1.indices(), c2.indices());
      Bitset next = common_of(c2);
      if (next == c1 || c2.none()) break;
      c1 = std::move(next);
    }
  }
  return r;
}

}  // namespace nos
