#include "nos/construction.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <map>

#include "nos/errors.hpp"
#include "nos/rng.hpp"

namespace nos {

namespace {

constexpr std::size_t kMaxSamples = 100000;

/// Largest m >= 1 with t^m <= d; t = 1 collapses every power to dimension 1, so m = 1.
std::size_t largest_power(std::size_t t, std::uint64_t d) {
  if (t < 2) return 1;
  std::size_t m = 0;
  BigInt power = 1;
  while (power * t <= d) {
    power *= t;
    ++m;
  }
  return m;
}

}  // namespace

const char* to_string(BuildMode m) { return m == BuildMode::clique ? "clique" : "bipartite"; }

BuildMode parse_build_mode(const std::string& s) {
  if (s == "clique") return BuildMode::clique;
  if (s == "bipartite") return BuildMode::bipartite;
  throw PreconditionError("unknown mode '" + s + "' (expected clique or bipartite)");
}

std::uint64_t ConstructionParams::product_dim() const {
  BigInt dim = pow_big(t, m);
  if (dim > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return dim.convert_to<std::uint64_t>();
}

void ConstructionParams::validate() const {
  if (t == 0 || m == 0 || n == 0 || k == 0) throw PreconditionError("t, m, n and k must all be at least 1");
  if (pow_big(t, m) > d) throw PreconditionError("t^m exceeds the target dimension d");
}

std::vector<FpVector> enumerate_V(PrimeModulus p, std::size_t t, bool normalized) {
  std::vector<FpVector> out;
  for (auto& v : all_vectors(p, t)) {
    if (is_self_orthogonal(v)) continue;
    if (normalized && !has_leading_one(v)) continue;
    out.push_back(std::move(v));
  }
  return out;
}

Schedule schedule_f2(std::size_t k, std::uint64_t d) {
  if (d == 0) throw PreconditionError("d must be at least 1");
  if (k < 8) throw PreconditionError("k < 8 gives t = floor(k/8) = 0; supply t, m, n directly");
  Schedule s;
  s.t = k / 8;
  s.m = largest_power(s.t, d);
  s.n = integer_root(pow_big(2, std::uint64_t{s.m} * s.t), 4);
  return s;
}

Schedule schedule_fp(PrimeModulus p, std::size_t k, std::uint64_t d) {
  if (k <= 32) throw PreconditionError("k <= 32 leaves no t with k > 32 t^{p-1}; supply t, m, n directly");
  const auto e = p.value() - 1;
  if (d == 0) throw PreconditionError("d must be at least 1");
  Schedule s;
  s.t = 1;
  while (32 * boost::multiprecision::pow(BigInt(s.t + 1), e) < k) ++s.t;
  s.m = largest_power(s.t, d);
  s.n = integer_root(pow_big(p.value(), std::uint64_t{s.m} * s.t), 4);
  return s;
}

std::vector<TensorFactorization> sample_Q(const ConstructionParams& params, std::uint64_t seed, std::size_t count) {
  const auto V = enumerate_V(params.p, params.t, true);
  if (V.empty()) throw PreconditionError("no non-self-orthogonal vectors to sample");
  RandomStream rng(seed);
  std::vector<TensorFactorization> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<FpVector> factors;
    factors.reserve(params.m);
    for (std::size_t j = 0; j < params.m; ++j) factors.push_back(V[rng.uniform_below(V.size())]);
    out.emplace_back(std::move(factors));
  }
  return out;
}

std::uint64_t attempt_seed(std::uint64_t seed, std::size_t retry) { return derive_seed(seed, retry); }

ConstructionRun build(const ConstructionParams& params, std::uint64_t seed, std::size_t max_retries,
                      std::uint64_t subset_budget) {
  params.validate();
  if (max_retries == 0) throw PreconditionError("max_retries must be at least 1");
  if (params.d > kMaxProductDim) throw GuardrailExceeded("target dimension d exceeds 2^20");
  if (params.n > kMaxSamples) throw GuardrailExceeded("sample count n exceeds 10^5");

  ConstructionRun run;
  run.params = params;
  run.seed = seed;
  run.max_retries = max_retries;
  const std::size_t repeat_cap = params.mode == BuildMode::clique ? params.k : params.k - 1;

  for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
    const auto samples = sample_Q(params, attempt_seed(seed, attempt), params.n);
    run.samples_drawn += samples.size();
    run.retries_used = attempt + 1;

    // position of each distinct vector in first-appearance order
    std::map<FpVector, std::size_t> seen;
    std::vector<FpVector> distinct;
    std::vector<std::size_t> multiplicity;
    for (const auto& s : samples) {
      auto [it, inserted] = seen.try_emplace(s.product(), distinct.size());
      if (inserted) {
        distinct.push_back(s.product());
        multiplicity.push_back(0);
      }
      ++multiplicity[it->second];
    }
    std::size_t worst = 0;
    std::size_t worst_index = 0;
    for (std::size_t i = 0; i < multiplicity.size(); ++i)
      if (multiplicity[i] > worst) {
        worst = multiplicity[i];
        worst_index = i;
      }
    run.max_multiplicity = worst;

    Verdict verdict = params.mode == BuildMode::clique ? is_k_nearly_orthogonal(distinct, params.k)
                                                       : bipartite_check(distinct, params.k, subset_budget);
    if (verdict.passed() && worst > repeat_cap) {
      verdict.outcome = Outcome::fail;
      verdict.witness_kind = "multiplicity";
      verdict.witness = {worst_index};
      verdict.detail = "a vector was drawn " + std::to_string(worst) + " times";
    }

    run.result.clear();
    for (const auto& v : distinct) run.result.push_back(v.padded(params.d));
    run.verdict = std::move(verdict);
    if (run.verdict.outcome != Outcome::fail) break;
  }
  return run;
}

double union_bound_log2(PrimeModulus p, std::size_t t, std::size_t m, const BigInt& n, std::size_t k, BuildMode mode) {
  if (n == 0) return -std::numeric_limits<double>::infinity();
  const double log_n = log2_big(n);
  const double mt = static_cast<double>(m) * static_cast<double>(t);
  if (p.value() == 2 && mode == BuildMode::clique) {
    // 2^{m t^2} * (n / 2^{m (t-3)/2})^{k+1}
    const double boxes = mt * static_cast<double>(t);
    const double per_box = log_n - static_cast<double>(m) * (static_cast<double>(t) - 3.0) / 2.0;
    return boxes + static_cast<double>(k + 1) * per_box;
  }
  // p^{2mt(t^{p-1}+p-1)} * (n / p^{m(t/2-3)})^{k}
  const std::size_t subsets = mode == BuildMode::clique ? k + 1 : k;
  const double log_p = std::log2(static_cast<double>(p.value()));
  const double s = std::pow(static_cast<double>(t), static_cast<double>(p.value() - 1)) + (p.value() - 1);
  const double boxes = 2.0 * mt * s * log_p;
  const double per_box = log_n - static_cast<double>(m) * (static_cast<double>(t) / 2.0 - 3.0) * log_p;
  return boxes + static_cast<double>(subsets) * per_box;
}

double union_bound_log2(const ConstructionParams& params) {
  params.validate();
  return union_bound_log2(params.p, params.t, params.m, BigInt(params.n), params.k, params.mode);
}

}  // namespace nos
