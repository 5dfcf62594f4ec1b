#pragma once

// Sumsets of multisets in F_p and in F_p^d, the Cauchy-Davenport and
// Eliahou-Kervaire bounds, and Hopf-Stiefel numbers.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cnull/error.hpp"
#include "cnull/field.hpp"
#include "cnull/multiset.hpp"

namespace cnull {

namespace detail {

/// m(c) = max { m_A(a) + m_B(b) - 1 : a + b = c }.
template <class Key, class Add>
std::map<Key, std::uint32_t> sumset_entries(const std::map<Key, std::uint32_t>& a,
                                            const std::map<Key, std::uint32_t>& b, Add add) {
  std::map<Key, std::uint32_t> out;
  for (const auto& [x, mx] : a) {
    for (const auto& [y, my] : b) {
      auto m = mx + my - 1;
      auto [it, inserted] = out.try_emplace(add(x, y), m);
      if (!inserted) it->second = std::max(it->second, m);
    }
  }
  return out;
}

template <class Key>
std::uint64_t entries_size(const std::map<Key, std::uint32_t>& e) {
  std::uint64_t d = 0;
  for (const auto& [k, m] : e) d += m;
  return d;
}

}  // namespace detail

inline Multiset sumset_multiset(const Multiset& a, const Multiset& b) {
  if (!(a.spec() == b.spec())) throw argument_error("sumset operands use different fields");
  auto e = detail::sumset_entries(a.entries(), b.entries(),
                                  [](const FieldElement& x, const FieldElement& y) { return x + y; });
  return Multiset(a.spec(), {e.begin(), e.end()});
}

/// deg(Y, m) = sum (m(y) - 1).
inline std::uint64_t multiset_deg(const Multiset& y) { return y.size() - y.distinct(); }

struct CdReport {
  std::uint64_t lhs;  // d(A+B)
  std::uint64_t rhs;  // min(p, d(A) + d(B) - 1)
  bool holds;
  std::uint64_t deg_lhs;  // deg(A+B)
  std::uint64_t deg_rhs;  // deg A + deg B
  bool deg_holds;

  bool equality() const { return lhs == rhs; }
};

inline CdReport cd_check(const Multiset& a, const Multiset& b) {
  if (!a.spec().is_prime()) throw argument_error("Cauchy-Davenport check needs a prime field");
  auto sum = sumset_multiset(a, b);
  CdReport r{};
  r.lhs = sum.size();
  r.rhs = std::min<std::uint64_t>(a.spec().modulus(), a.size() + b.size() - 1);
  r.holds = r.lhs >= r.rhs;
  r.deg_lhs = multiset_deg(sum);
  r.deg_rhs = multiset_deg(a) + multiset_deg(b);
  r.deg_holds = r.deg_lhs >= r.deg_rhs;
  return r;
}

/// C(n, k) mod p via Lucas's theorem: the product of digit binomials in base p.
inline std::uint64_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  if (k > n) return 0;
  std::uint64_t result = 1 % p;
  while (n > 0 || k > 0) {
    auto nd = n % p, kd = k % p;
    if (kd > nd) return 0;
    // nd, kd < p, so every factor of kd! is invertible mod p.
    std::uint64_t num = 1 % p, den = 1 % p;
    for (std::uint64_t j = 1; j <= kd; ++j) {
      num = detail::mul_mod(num, nd - kd + j, p);
      den = detail::mul_mod(den, j, p);
    }
    result = detail::mul_mod(result, detail::mul_mod(num, detail::pow_mod(den, p - 2, p), p), p);
    n /= p;
    k /= p;
  }
  return result;
}

/// C(n, k) mod p from the exact big-integer binomial.
inline std::uint64_t binomial_mod_p_exact(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  if (k > n) return 0;
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  mpz_class r = c % mpz_class(static_cast<unsigned long>(p));
  return mpz_get_ui(r.get_mpz_t());
}

/// (r, s, n) satisfies the Hopf-Stiefel condition: p | C(n, k) for every
/// integer k with n - r < k < s. Binomials outside 0 <= k <= n are zero.
inline bool hopf_stiefel_condition(std::uint64_t p, std::uint64_t r, std::uint64_t s, std::uint64_t n) {
  auto lo = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(r) + 1;
  for (auto k = std::max<std::int64_t>(lo, 0); k < static_cast<std::int64_t>(s) && k <= static_cast<std::int64_t>(n); ++k)
    if (binomial_mod_p(n, static_cast<std::uint64_t>(k), p) != 0) return false;
  return true;
}

/// beta_p(r, s): the smallest n >= 1 satisfying the Hopf-Stiefel condition.
/// n = r + s - 1 always works, since its range r + s - 1 - r < k < s is empty.
inline std::uint64_t hopf_stiefel(std::uint64_t p, std::uint64_t r, std::uint64_t s) {
  if (!is_prime_u64(p)) throw argument_error("Hopf-Stiefel numbers need a prime p");
  if (r == 0 || s == 0) throw argument_error("Hopf-Stiefel numbers need positive r and s");
  for (std::uint64_t n = 1;; ++n)
    if (hopf_stiefel_condition(p, r, s, n)) return n;
}

/// Multiset of vectors in F_p^dim.
class VectorMultiset {
 public:
  using Vector = std::vector<std::uint64_t>;
  using Entries = std::map<Vector, std::uint32_t>;

  VectorMultiset(std::uint64_t p, std::size_t dim, const std::vector<std::pair<Vector, std::uint32_t>>& items)
      : p_(p), dim_(dim) {
    if (!is_prime_u64(p)) throw argument_error("vector space needs a prime field");
    if (dim == 0) throw argument_error("vector space dimension must be at least 1");
    if (items.empty()) throw argument_error("multiset must be nonempty");
    for (const auto& [v, m] : items) {
      if (v.size() != dim) throw argument_error("vector has the wrong dimension");
      Vector canon;
      for (auto x : v) canon.push_back(x % p);
      if (m == 0) throw argument_error("multiplicities must be positive");
      if (!entries_.emplace(canon, m).second) throw argument_error("duplicate vector in multiset");
    }
  }

  static VectorMultiset from_entries(std::uint64_t p, std::size_t dim, const Entries& e) {
    return VectorMultiset(p, dim, {e.begin(), e.end()});
  }

  std::uint64_t modulus() const noexcept { return p_; }
  std::size_t dimension() const noexcept { return dim_; }
  const Entries& entries() const noexcept { return entries_; }
  std::uint64_t size() const { return detail::entries_size(entries_); }

  friend bool operator==(const VectorMultiset&, const VectorMultiset&) = default;

 private:
  std::uint64_t p_;
  std::size_t dim_;
  Entries entries_;
};

inline VectorMultiset sumset_multiset(const VectorMultiset& a, const VectorMultiset& b) {
  if (a.modulus() != b.modulus() || a.dimension() != b.dimension())
    throw argument_error("vector multisets live in different spaces");
  const auto p = a.modulus();
  auto e = detail::sumset_entries(a.entries(), b.entries(), [p](const auto& x, const auto& y) {
    VectorMultiset::Vector z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] >= p - y[i] ? x[i] - (p - y[i]) : x[i] + y[i];
    return z;
  });
  return VectorMultiset::from_entries(p, a.dimension(), e);
}

struct EkReport {
  std::uint64_t lhs;  // d(A+B)
  std::uint64_t rhs;  // beta_p(d(A), d(B))
  bool holds;
};

inline EkReport ek_check(const VectorMultiset& a, const VectorMultiset& b) {
  auto sum = sumset_multiset(a, b);
  EkReport r{};
  r.lhs = sum.size();
  r.rhs = hopf_stiefel(a.modulus(), a.size(), b.size());
  r.holds = r.lhs >= r.rhs;
  return r;
}

}  // namespace cnull
