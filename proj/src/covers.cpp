#include "nos/covers.hpp"

#include <algorithm>

#include "nos/errors.hpp"
#include "nos/tensor.hpp"

namespace nos {

namespace {

void require_members(std::span<const FpVector> vs, PrimeModulus p, std::size_t dim) {
  for (const auto& v : vs)
    if (v.modulus() != p || v.dim() != dim)
      throw ContractViolation("vector " + to_string(v) + " is not in F_" + std::to_string(p.value()) + "^" +
                              std::to_string(dim));
}

bool contains_all(const std::vector<FpVector>& sorted, std::span<const FpVector> a) {
  return std::all_of(a.begin(), a.end(),
                     [&](const FpVector& v) { return std::binary_search(sorted.begin(), sorted.end(), v); });
}

}  // namespace

SubspaceBasis SubspaceBasis::zero(PrimeModulus p, std::size_t ambient_dim) { return SubspaceBasis(p, ambient_dim); }

bool SubspaceBasis::contains(const FpVector& v) const {
  if (v.modulus() != p_ || v.dim() != ambient_) throw ContractViolation("membership test outside the ambient space");
  std::vector<Residue> r(v.entries().begin(), v.entries().end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Residue c = r[pivots_[i]];
    if (c == 0) continue;
    const Residue neg = (p_.value() - c) % p_.value();
    for (std::size_t j = 0; j < ambient_; ++j) r[j] = p_.add(r[j], p_.mul(neg, rows_[i][j]));
  }
  return std::all_of(r.begin(), r.end(), [](Residue x) { return x == 0; });
}

SubspaceBasis span(PrimeModulus p, std::size_t ambient_dim, std::span<const FpVector> vectors) {
  require_members(vectors, p, ambient_dim);
  std::vector<std::vector<Residue>> m;
  m.reserve(vectors.size());
  for (const auto& v : vectors) m.emplace_back(v.entries().begin(), v.entries().end());

  SubspaceBasis out(p, ambient_dim);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ambient_dim && rank < m.size(); ++col) {
    auto piv = std::find_if(m.begin() + static_cast<std::ptrdiff_t>(rank), m.end(),
                            [&](const auto& row) { return row[col] != 0; });
    if (piv == m.end()) continue;
    std::iter_swap(m.begin() + static_cast<std::ptrdiff_t>(rank), piv);
    auto& prow = m[rank];
    const Residue inv = p.inverse(prow[col]);
    for (auto& x : prow) x = p.mul(x, inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const Residue neg = p.value() - m[r][col];
      for (std::size_t j = 0; j < ambient_dim; ++j) m[r][j] = p.add(m[r][j], p.mul(neg, prow[j]));
    }
    out.pivots_.push_back(col);
    ++rank;
  }
  for (std::size_t r = 0; r < rank; ++r) out.rows_.emplace_back(p, std::move(m[r]));
  return out;
}

bool subspaces_orthogonal(const SubspaceBasis& w1, const SubspaceBasis& w2) {
  if (w1.modulus() != w2.modulus() || w1.ambient_dim() != w2.ambient_dim())
    throw ContractViolation("subspaces live in different ambient spaces");
  for (const auto& a : w1.rows())
    for (const auto& b : w2.rows())
      if (inner_product(a, b) != 0) return false;
  return true;
}

SubspaceBasis extend_to_dimension(const SubspaceBasis& w, std::size_t dim) {
  if (dim > w.ambient_dim()) throw PreconditionError("target dimension exceeds the ambient dimension");
  if (w.rank() > dim) throw PreconditionError("subspace already exceeds the target dimension");
  std::vector<FpVector> gens = w.rows();
  SubspaceBasis cur = w;
  for (std::size_t i = 0; i < w.ambient_dim() && cur.rank() < dim; ++i) {
    auto e = FpVector::unit(w.modulus(), w.ambient_dim(), i);
    if (cur.contains(e)) continue;
    gens.push_back(std::move(e));
    cur = span(w.modulus(), w.ambient_dim(), gens);
  }
  return cur;
}

void for_each_subspace(PrimeModulus p, std::size_t s, std::size_t r,
                       const std::function<void(const SubspaceBasis&)>& fn) {
  if (r > s) return;
  if (r == 0) {
    fn(SubspaceBasis::zero(p, s));
    return;
  }
  std::vector<std::size_t> pivots(r);
  for (std::size_t i = 0; i < r; ++i) pivots[i] = i;
  while (true) {
    // free slots: (row i, column c) with c > pivots[i] and c not a pivot column
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t c = pivots[i] + 1; c < s; ++c)
        if (!std::binary_search(pivots.begin(), pivots.end(), c)) slots.emplace_back(i, c);
    std::vector<Residue> assignment(slots.size(), 0);
    while (true) {
      SubspaceBasis b(p, s);
      std::vector<std::vector<Residue>> rows(r, std::vector<Residue>(s, 0));
      for (std::size_t i = 0; i < r; ++i) rows[i][pivots[i]] = 1;
      for (std::size_t k = 0; k < slots.size(); ++k) rows[slots[k].first][slots[k].second] = assignment[k];
      for (auto& row : rows) b.rows_.emplace_back(p, std::move(row));
      b.pivots_ = pivots;
      fn(b);
      std::size_t k = 0;
      for (; k < assignment.size(); ++k) {
        if (++assignment[k] < p.value()) break;
        assignment[k] = 0;
      }
      if (k == assignment.size()) break;
    }
    // next pivot combination in lexicographic order
    std::size_t i = r;
    while (i > 0 && pivots[i - 1] == s - r + (i - 1)) --i;
    if (i == 0) return;
    ++pivots[i - 1];
    for (std::size_t j = i; j < r; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

SubspaceBasis f2_cover_of(std::span<const FpVector> a, std::size_t t) {
  const PrimeModulus f2(2);
  require_members(a, f2, t);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i; j < a.size(); ++j)
      if (inner_product(a[i], a[j]) == 0)
        throw PreconditionError("orthogonal pair in cover input: " + to_string(a[i]) + " and " + to_string(a[j]));

  const FpVector one(f2, {1});
  std::vector<FpVector> lifted;
  lifted.reserve(a.size());
  for (const auto& v : a) lifted.push_back(v.concat(one));
  const auto w = span(f2, t + 1, lifted);
  if (!subspaces_orthogonal(w, w)) throw InternalError("lifted span is not totally isotropic");
  if (w.rank() > (t + 1) / 2) throw InternalError("isotropic subspace exceeds half the dimension");

  std::vector<FpVector> projected;
  for (const auto& row : w.rows()) projected.push_back(row.prefix(t));
  auto cover = span(f2, t, projected);
  for (const auto& v : a)
    if (!cover.contains(v)) throw InternalError("projected cover misses " + to_string(v));
  return cover;
}

F2CollectionCount count_f2_collection(std::size_t t) {
  if (t == 0 || t > 8) throw GuardrailExceeded("subspace enumeration limited to 1 <= t <= 8");
  F2CollectionCount out;
  out.t = t;
  out.dimension = (t + 1) / 2;
  std::uint64_t count = 0;
  for_each_subspace(PrimeModulus(2), t, out.dimension, [&](const SubspaceBasis&) { ++count; });
  out.count = count;
  out.coarse_bound = pow_big(2, std::uint64_t{t} * t);
  if (out.count > out.coarse_bound) throw InternalError("subspace count exceeds 2^{t^2}");
  return out;
}

std::size_t g_dimension(PrimeModulus p, std::size_t t) {
  BigInt dim = pow_big(t, p.value() - 1) + (p.value() - 1);
  if (dim > kMaxProductDim) throw GuardrailExceeded("g-map output dimension exceeds 2^20");
  return dim.convert_to<std::size_t>();
}

FpVector g_map(const FpVector& v) {
  const auto p = v.modulus();
  g_dimension(p, v.dim());
  const FpVector ones(p, std::vector<Residue>(p.value() - 1, 1));
  return tensor_power(v, p.value() - 1).product().concat(ones);
}

GIdentityReport g_inner_identity_check(PrimeModulus p, std::size_t t, std::uint64_t pair_budget) {
  if (pow_big(p.value(), 2 * std::uint64_t{t}) > pair_budget) throw BudgetExceeded("p^{2t} pairs exceed the budget");
  GIdentityReport rep;
  rep.p = p.value();
  rep.t = t;
  const auto vs = all_vectors(p, t);
  std::vector<FpVector> images;
  images.reserve(vs.size());
  for (const auto& v : vs) images.push_back(g_map(v));
  const Residue shift = p.value() - 1;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) {
      ++rep.pairs;
      const Residue base = inner_product(vs[i], vs[j]);
      const Residue lifted = inner_product(images[i], images[j]);
      if (lifted != p.add(p.pow(base, p.value() - 1), shift)) ++rep.identity_violations;
      if ((base == 0) != (lifted != 0)) ++rep.biconditional_violations;
    }
  return rep;
}

std::vector<FpVector> g_preimage(const SubspaceBasis& w, std::size_t t) {
  if (w.ambient_dim() != g_dimension(w.modulus(), t))
    throw ContractViolation("subspace does not live in the g-map codomain");
  std::vector<FpVector> out;
  for (auto& v : all_vectors(w.modulus(), t))
    if (w.contains(g_map(v))) out.push_back(std::move(v));
  return out;
}

CoverPair cover_pair_for(PrimeModulus p, std::size_t t, std::span<const FpVector> a1, std::span<const FpVector> a2) {
  if (t < 2) throw PreconditionError("cover pairs require t >= 2");
  require_members(a1, p, t);
  require_members(a2, p, t);
  for (const auto& u : a1)
    for (const auto& v : a2)
      if (orthogonal(u, v)) throw PreconditionError("orthogonal cross pair: " + to_string(u) + " and " + to_string(v));

  const std::size_t s = g_dimension(p, t);
  auto lift = [](std::span<const FpVector> a) {
    std::vector<FpVector> out;
    for (const auto& v : a) out.push_back(g_map(v));
    return out;
  };
  const auto g1 = lift(a1);
  const auto g2 = lift(a2);
  CoverPair pair{{}, {}, span(p, s, g1), span(p, s, g2)};
  if (!subspaces_orthogonal(pair.w1, pair.w2)) throw InternalError("g-images of a non-orthogonal pair are not orthogonal");
  pair.c1 = g_preimage(pair.w1, t);
  pair.c2 = g_preimage(pair.w2, t);
  if (!contains_all(pair.c1, a1) || !contains_all(pair.c2, a2)) throw InternalError("cover misses an input vector");
  for (const auto& u : pair.c1)
    for (const auto& v : pair.c2)
      if (orthogonal(u, v)) throw InternalError("cover pair contains an orthogonal cross pair");
  if (BigInt(pair.c1.size()) * pair.c2.size() > pow_big(p.value(), t + 2))
    throw InternalError("cover pair exceeds p^{t+2}");
  return pair;
}

}  // namespace nos
