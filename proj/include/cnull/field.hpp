#pragma once

// Exact coefficient fields: prime fields F_p for any 64-bit prime p and the
// rationals, selected at runtime behind one element type.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>

#include "cnull/error.hpp"

namespace cnull {

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

inline bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the fixed witness set is exact below 2^64.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Which field coefficients live in. Characteristic 0 stands for the rationals.
class FieldSpec {
 public:
  enum class Kind { prime, rational };

  static FieldSpec prime(std::uint64_t p) {
    if (!is_prime_u64(p)) throw argument_error("field modulus " + std::to_string(p) + " is not prime");
    return FieldSpec(Kind::prime, p);
  }
  static FieldSpec rationals() { return FieldSpec(Kind::rational, 0); }

  /// Accepts "prime:<p>" or "rational".
  static FieldSpec parse(std::string_view text) {
    if (text == "rational" || text == "rationals" || text == "Q") return rationals();
    constexpr std::string_view prefix = "prime:";
    if (text.substr(0, prefix.size()) == prefix) {
      auto digits = text.substr(prefix.size());
      if (digits.empty() || !detail::is_decimal_integer(digits) || digits.front() == '-' || digits.size() > 19)
        throw input_error("bad field modulus '" + std::string(digits) + "'");
      return prime(std::stoull(std::string(digits)));
    }
    throw input_error("unknown field '" + std::string(text) + "', expected prime:<p> or rational");
  }

  Kind kind() const noexcept { return kind_; }
  bool is_prime() const noexcept { return kind_ == Kind::prime; }
  std::uint64_t modulus() const noexcept { return p_; }
  std::uint64_t characteristic() const noexcept { return p_; }

  std::string to_string() const { return is_prime() ? "prime:" + std::to_string(p_) : "rational"; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(Kind k, std::uint64_t p) : kind_(k), p_(p) {}

  Kind kind_;
  std::uint64_t p_;
};

/// An element of a FieldSpec in canonical form: a residue in [0, p) or a
/// reduced fraction. Equality is representational.
class FieldElement {
 public:
  FieldElement(const FieldSpec& spec, long long v) : spec_(spec) {
    if (spec.is_prime()) {
      auto p = static_cast<__int128>(spec.modulus());
      auto r = static_cast<__int128>(v) % p;
      if (r < 0) r += p;
      value_ = static_cast<std::uint64_t>(r);
    } else {
      value_ = mpq_class(static_cast<long>(v));
    }
  }

  FieldElement(const FieldSpec& spec, const mpz_class& v) : spec_(spec) {
    if (spec.is_prime()) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), mpz_class(static_cast<unsigned long>(spec.modulus())).get_mpz_t());
      value_ = static_cast<std::uint64_t>(mpz_get_ui(r.get_mpz_t()));
    } else {
      value_ = mpq_class(v);
    }
  }

  FieldElement(const FieldSpec& spec, const mpq_class& v) : spec_(spec) {
    if (spec.is_prime()) {
      FieldElement num(spec, mpz_class(v.get_num()));
      FieldElement den(spec, mpz_class(v.get_den()));
      *this = num / den;
    } else {
      mpq_class q = v;
      q.canonicalize();
      value_ = std::move(q);
    }
  }

  static FieldElement zero(const FieldSpec& spec) { return FieldElement(spec, 0LL); }
  static FieldElement one(const FieldSpec& spec) { return FieldElement(spec, 1LL); }

  /// Parses "a" or "a/b" with decimal integers a, b.
  static FieldElement parse(const FieldSpec& spec, std::string_view text) {
    auto slash = text.find('/');
    auto num_text = text.substr(0, slash);
    if (!detail::is_decimal_integer(num_text))
      throw input_error("bad field element '" + std::string(text) + "'");
    mpz_class num(std::string{num_text});
    if (slash == std::string_view::npos) return FieldElement(spec, num);
    auto den_text = text.substr(slash + 1);
    if (!detail::is_decimal_integer(den_text))
      throw input_error("bad field element '" + std::string(text) + "'");
    mpz_class den(std::string{den_text});
    if (den == 0) throw input_error("zero denominator in '" + std::string(text) + "'");
    return FieldElement(spec, num) / FieldElement(spec, den);
  }

  const FieldSpec& spec() const noexcept { return spec_; }

  bool is_zero() const {
    if (spec_.is_prime()) return std::get<std::uint64_t>(value_) == 0;
    return sgn(std::get<mpq_class>(value_)) == 0;
  }
  bool is_one() const {
    if (spec_.is_prime()) return std::get<std::uint64_t>(value_) == 1;
    return std::get<mpq_class>(value_) == 1;
  }

  /// Canonical residue; prime fields only.
  std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }
  /// Exact value; rationals only.
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }

  /// Denominator is 1. Always true in a prime field.
  bool is_integral() const {
    return spec_.is_prime() || std::get<mpq_class>(value_).get_den() == 1;
  }

  FieldElement operator-() const {
    FieldElement r = *this;
    if (spec_.is_prime()) {
      auto v = std::get<std::uint64_t>(value_);
      r.value_ = v == 0 ? std::uint64_t{0} : spec_.modulus() - v;
    } else {
      r.value_ = mpq_class(-std::get<mpq_class>(value_));
    }
    return r;
  }

  FieldElement& operator+=(const FieldElement& o) {
    check_same(o);
    if (spec_.is_prime()) {
      auto a = std::get<std::uint64_t>(value_);
      auto b = std::get<std::uint64_t>(o.value_);
      auto p = spec_.modulus();
      value_ = a >= p - b ? a - (p - b) : a + b;
    } else {
      std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
    }
    return *this;
  }
  FieldElement& operator-=(const FieldElement& o) { return *this += -o; }
  FieldElement& operator*=(const FieldElement& o) {
    check_same(o);
    if (spec_.is_prime()) {
      value_ = detail::mul_mod(std::get<std::uint64_t>(value_), std::get<std::uint64_t>(o.value_), spec_.modulus());
    } else {
      std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
    }
    return *this;
  }
  FieldElement& operator/=(const FieldElement& o) {
    check_same(o);
    return *this *= o.inv();
  }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  FieldElement inv() const {
    if (is_zero()) throw argument_error("inverse of zero");
    FieldElement r = *this;
    if (spec_.is_prime()) {
      r.value_ = inverse_mod(std::get<std::uint64_t>(value_), spec_.modulus());
    } else {
      r.value_ = mpq_class(1 / std::get<mpq_class>(value_));
    }
    return r;
  }

  /// a^0 = 1 for every a, zero included.
  FieldElement pow(std::uint64_t e) const {
    if (spec_.is_prime()) {
      FieldElement r = *this;
      r.value_ = detail::pow_mod(std::get<std::uint64_t>(value_), e, spec_.modulus());
      return r;
    }
    FieldElement result = one(spec_);
    FieldElement base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e > 0) base *= base;
    }
    return result;
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.spec_ == b.spec_ && a.value_ == b.value_;
  }

  /// Canonical order: residues numerically, rationals by value.
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    if (a.spec_.is_prime()) return std::get<std::uint64_t>(a.value_) <=> std::get<std::uint64_t>(b.value_);
    int c = cmp(std::get<mpq_class>(a.value_), std::get<mpq_class>(b.value_));
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  std::string to_string() const {
    if (spec_.is_prime()) return std::to_string(std::get<std::uint64_t>(value_));
    return std::get<mpq_class>(value_).get_str();
  }

 private:
  void check_same(const FieldElement& o) const {
    if (!(spec_ == o.spec_))
      throw argument_error("field mismatch: " + spec_.to_string() + " vs " + o.spec_.to_string());
  }

  static std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    // Extended Euclid on signed 128-bit to survive moduli near 2^64.
    __int128 old_r = a, r = m, old_s = 1, s = 0;
    while (r != 0) {
      __int128 q = old_r / r;
      std::tie(old_r, r) = std::pair<__int128, __int128>{r, old_r - q * r};
      std::tie(old_s, s) = std::pair<__int128, __int128>{s, old_s - q * s};
    }
    if (old_s < 0) old_s += m;
    return static_cast<std::uint64_t>(old_s);
  }

  FieldSpec spec_;
  std::variant<std::uint64_t, mpq_class> value_;
};

}  // namespace cnull
