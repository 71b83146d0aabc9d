#include "nos/tensor.hpp"

#include <algorithm>

#include "nos/errors.hpp"

namespace nos {

namespace {

void sort_unique(std::vector<FpVector>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

FpVector fold(const std::vector<FpVector>& factors) {
  if (factors.empty()) throw PreconditionError("tensor product of an empty factor list");
  FpVector acc = factors.front();
  for (std::size_t j = 1; j < factors.size(); ++j) {
    require_compatible(factors[j], factors.front());
    acc = tensor_pair(acc, factors[j]);
  }
  return acc;
}

}  // namespace

FpVector tensor_pair(const FpVector& u, const FpVector& v) {
  if (u.modulus() != v.modulus()) throw ContractViolation("modulus mismatch in tensor product");
  if (u.dim() > kMaxProductDim / v.dim())
    throw GuardrailExceeded("tensor product dimension exceeds 2^20");
  const auto p = u.modulus();
  std::vector<Residue> w;
  w.reserve(u.dim() * v.dim());
  for (auto a : u.entries())
    for (auto b : v.entries()) w.push_back(p.mul(a, b));
  return FpVector(p, std::move(w));
}

TensorFactorization::TensorFactorization(std::vector<FpVector> factors)
    : factors_(std::move(factors)), product_(fold(factors_)) {}

TensorFactorization tensor_many(std::vector<FpVector> factors) { return TensorFactorization(std::move(factors)); }

TensorFactorization tensor_power(const FpVector& v, std::size_t m) {
  return TensorFactorization(std::vector<FpVector>(m, v));
}

std::vector<FpVector> projection(std::span<const TensorFactorization> set, std::size_t j) {
  std::vector<FpVector> out;
  for (const auto& f : set) {
    if (f.order() != set.front().order()) throw ContractViolation("projection over mixed tensor orders");
    if (j >= f.order()) throw ContractViolation("projection index out of range");
    out.push_back(f.factor(j));
  }
  sort_unique(out);
  return out;
}

ProductBox::ProductBox(std::vector<std::vector<FpVector>> factor_sets) : sets_(std::move(factor_sets)) {
  if (sets_.empty()) throw PreconditionError("box needs at least one factor set");
  const FpVector* ref = nullptr;
  for (auto& s : sets_) {
    for (const auto& v : s) {
      if (ref)
        require_compatible(v, *ref);
      else
        ref = &v;
    }
    sort_unique(s);
  }
}

BigInt box_size(const ProductBox& box) {
  BigInt size = 1;
  for (const auto& s : box.factor_sets()) {
    for (const auto& v : s)
      if (!has_leading_one(v))
        throw PreconditionError("box factor " + to_string(v) + " is not nonzero with leading entry 1");
    size *= s.size();
  }
  return size;
}

bool box_contains(const ProductBox& box, const TensorFactorization& f) {
  if (f.order() != box.order()) return false;
  for (std::size_t j = 0; j < f.order(); ++j) {
    const auto& s = box.factor_sets()[j];
    if (!std::binary_search(s.begin(), s.end(), f.factor(j))) return false;
  }
  return true;
}

std::vector<FpVector> materialize(const ProductBox& box, std::size_t limit) {
  BigInt raw = 1;
  for (const auto& s : box.factor_sets()) raw *= s.size();
  if (raw > limit) throw GuardrailExceeded("box too large to materialize");
  std::vector<FpVector> out;
  if (raw == 0) return out;
  const auto& sets = box.factor_sets();
  std::vector<std::size_t> idx(sets.size(), 0);
  while (true) {
    std::vector<FpVector> pick;
    pick.reserve(sets.size());
    for (std::size_t j = 0; j < sets.size(); ++j) pick.push_back(sets[j][idx[j]]);
    out.push_back(fold(pick));
    std::size_t j = sets.size();
    while (j > 0) {
      --j;
      if (++idx[j] < sets[j].size()) break;
      idx[j] = 0;
      if (j == 0) {
        sort_unique(out);
        return out;
      }
    }
  }
}

}  // namespace nos
