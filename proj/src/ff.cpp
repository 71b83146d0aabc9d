#include "nos/ff.hpp"

#include <algorithm>
#include <sstream>

#include "nos/errors.hpp"

namespace nos {

namespace {
constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 24;
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeModulus::PrimeModulus(std::uint32_t p) : p_(p) {
  if (p > kMax || !is_prime(p))
    throw PreconditionError("modulus " + std::to_string(p) + " is not a prime below 2^16");
}

Residue PrimeModulus::reduce(std::int64_t x) const noexcept {
  auto r = x % static_cast<std::int64_t>(p_);
  return static_cast<Residue>(r < 0 ? r + p_ : r);
}

Residue PrimeModulus::pow(Residue a, std::uint64_t e) const noexcept {
  Residue result = 1 % p_;
  Residue base = a % p_;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Residue PrimeModulus::inverse(Residue a) const {
  if (a % p_ == 0) throw PreconditionError("zero has no inverse mod " + std::to_string(p_));
  return pow(a, p_ - 2);
}

FpVector::FpVector(PrimeModulus p, std::vector<Residue> entries) : p_(p), entries_(std::move(entries)) {
  if (entries_.empty()) throw PreconditionError("vector dimension must be positive");
  for (auto e : entries_)
    if (e >= p_.value())
      throw PreconditionError("entry " + std::to_string(e) + " is not a residue mod " +
                              std::to_string(p_.value()));
}

FpVector FpVector::zeros(PrimeModulus p, std::size_t dim) { return FpVector(p, std::vector<Residue>(dim, 0)); }

FpVector FpVector::unit(PrimeModulus p, std::size_t dim, std::size_t i) {
  if (i >= dim) throw ContractViolation("unit vector index out of range");
  std::vector<Residue> e(dim, 0);
  e[i] = 1;
  return FpVector(p, std::move(e));
}

FpVector FpVector::from_integers(PrimeModulus p, std::span<const std::int64_t> values) {
  std::vector<Residue> e;
  e.reserve(values.size());
  for (auto x : values) e.push_back(p.reduce(x));
  return FpVector(p, std::move(e));
}

bool FpVector::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](Residue e) { return e == 0; });
}

std::size_t FpVector::leading_index() const noexcept {
  auto it = std::find_if(entries_.begin(), entries_.end(), [](Residue e) { return e != 0; });
  return static_cast<std::size_t>(it - entries_.begin());
}

FpVector FpVector::scaled(Residue a) const {
  std::vector<Residue> e(entries_);
  for (auto& x : e) x = p_.mul(x, a % p_.value());
  return FpVector(p_, std::move(e));
}

FpVector FpVector::padded(std::size_t new_dim) const {
  if (new_dim < dim()) throw ContractViolation("padding cannot shrink a vector");
  std::vector<Residue> e(entries_);
  e.resize(new_dim, 0);
  return FpVector(p_, std::move(e));
}

FpVector FpVector::prefix(std::size_t len) const {
  if (len == 0 || len > dim()) throw ContractViolation("prefix length out of range");
  return FpVector(p_, std::vector<Residue>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(len)));
}

FpVector FpVector::concat(const FpVector& tail) const {
  if (tail.p_ != p_) throw ContractViolation("modulus mismatch in concat");
  std::vector<Residue> e(entries_);
  e.insert(e.end(), tail.entries_.begin(), tail.entries_.end());
  return FpVector(p_, std::move(e));
}

FpVector operator+(const FpVector& a, const FpVector& b) {
  require_compatible(a, b);
  std::vector<Residue> e(a.entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.p_.add(e[i], b.entries_[i]);
  return FpVector(a.p_, std::move(e));
}

std::strong_ordering operator<=>(const FpVector& a, const FpVector& b) {
  if (auto c = a.p_ <=> b.p_; c != 0) return c;
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                                b.entries_.end());
}

std::string to_string(const FpVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? "," : "") << v[i];
  os << ") mod " << v.p();
  return os.str();
}

void require_compatible(const FpVector& u, const FpVector& v) {
  if (u.modulus() != v.modulus())
    throw ContractViolation("modulus mismatch: " + std::to_string(u.p()) + " vs " + std::to_string(v.p()));
  if (u.dim() != v.dim())
    throw ContractViolation("dimension mismatch: " + std::to_string(u.dim()) + " vs " + std::to_string(v.dim()));
}

Residue inner_product(const FpVector& u, const FpVector& v) {
  require_compatible(u, v);
  std::uint64_t acc = 0;
  auto a = u.entries();
  auto b = v.entries();
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::uint64_t{a[i]} * b[i];
  return static_cast<Residue>(acc % u.p());
}

bool is_self_orthogonal(const FpVector& v) { return inner_product(v, v) == 0; }

FpVector normalize_leading(const FpVector& v) {
  auto i = v.leading_index();
  if (i == v.dim()) throw PreconditionError("zero vector has no leading entry");
  return v.scaled(v.modulus().inverse(v[i]));
}

PackedF2::PackedF2(const FpVector& v) : bits_(v.dim()) {
  if (v.p() != 2) throw ContractViolation("packed representation requires p = 2");
  for (std::size_t i = 0; i < v.dim(); ++i)
    if (v[i]) bits_.set(i);
}

Residue inner_product(const PackedF2& u, const PackedF2& v) {
  if (u.dim() != v.dim()) throw ContractViolation("dimension mismatch in packed inner product");
  return static_cast<Residue>(u.bits().intersection_count(v.bits()) & 1u);
}

std::vector<FpVector> all_vectors(PrimeModulus p, std::size_t dim) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    total *= p.value();
    if (total > kEnumerationLimit)
      throw GuardrailExceeded("p^dim exceeds the 2^24 enumeration limit");
  }
  std::vector<FpVector> out;
  out.reserve(total);
  std::vector<Residue> cur(dim, 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    out.emplace_back(p, cur);
    for (std::size_t i = dim; i-- > 0;) {
      if (++cur[i] < p.value()) break;
      cur[i] = 0;
    }
  }
  return out;
}

}  // namespace nos
