#pragma once

// Sparse multivariate polynomials over a runtime field, with coordinate
// shifts, Hasse expansion coefficients and term orders.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cnull/error.hpp"
#include "cnull/field.hpp"

namespace cnull {

/// Exponent vector (u_1, ..., u_n) of the monomial x_1^{u_1} ... x_n^{u_n}.
using Exponents = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Exponents& u) {
  return std::accumulate(u.begin(), u.end(), std::uint64_t{0});
}

/// u <= w in every component.
inline bool componentwise_leq(const Exponents& u, const Exponents& w) {
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] > w[i]) return false;
  return true;
}

/// u < w in every component.
inline bool componentwise_less(const Exponents& u, const Exponents& w) {
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] >= w[i]) return false;
  return true;
}

/// All u with u < bound componentwise, in lexicographic order.
inline std::vector<Exponents> box(const Exponents& bound) {
  std::vector<Exponents> out;
  for (auto b : bound)
    if (b == 0) return out;
  Exponents u(bound.size(), 0);
  while (true) {
    out.push_back(u);
    std::size_t i = u.size();
    while (i > 0) {
      --i;
      if (++u[i] < bound[i]) break;
      u[i] = 0;
      if (i == 0) return out;
    }
    if (u.empty()) return out;
  }
}

/// Total degree of a polynomial, with a distinct value below every integer
/// for the zero polynomial.
class Degree {
 public:
  static Degree minus_infinity() { return Degree(); }
  explicit Degree(std::int64_t d) : value_(d) {}

  bool is_minus_infinity() const noexcept { return !value_; }
  std::int64_t value() const {
    if (!value_) throw argument_error("degree of the zero polynomial has no integer value");
    return *value_;
  }

  friend Degree operator-(const Degree& d, std::int64_t k) {
    return d.value_ ? Degree(*d.value_ - k) : d;
  }
  friend bool operator==(const Degree&, const Degree&) = default;
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (!a.value_ || !b.value_) return a.value_.has_value() <=> b.value_.has_value();
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const { return value_ ? std::to_string(*value_) : "-inf"; }

 private:
  Degree() = default;
  std::optional<std::int64_t> value_;
};

/// Graded lexicographic comparison with x_1 > x_2 > ... > x_n.
struct GradedLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    auto da = total_degree(a);
    auto db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

/// A monomial order: one of three kinds applied after ranking the variables
/// by `ranking` (ranking[0] is the most significant variable).
struct TermOrder {
  enum class Kind { lex, graded_lex, graded_reverse_lex };

  Kind kind = Kind::graded_lex;
  std::vector<std::size_t> ranking;

  static TermOrder natural(Kind kind, std::size_t arity) {
    TermOrder o{kind, std::vector<std::size_t>(arity)};
    std::iota(o.ranking.begin(), o.ranking.end(), 0);
    return o;
  }

  /// Strict "a precedes b".
  bool less(const Exponents& a, const Exponents& b) const {
    if (kind != Kind::lex) {
      auto da = total_degree(a);
      auto db = total_degree(b);
      if (da != db) return da < db;
    }
    if (kind == Kind::graded_reverse_lex) {
      // Ties broken at the least significant variable: smaller exponent there wins.
      for (std::size_t k = ranking.size(); k-- > 0;) {
        auto v = ranking[k];
        if (a[v] != b[v]) return a[v] > b[v];
      }
      return false;
    }
    for (auto v : ranking)
      if (a[v] != b[v]) return a[v] < b[v];
    return false;
  }

  std::string name() const {
    std::string s = kind == Kind::lex ? "lex" : kind == Kind::graded_lex ? "grlex" : "grevlex";
    s += "(";
    for (std::size_t k = 0; k < ranking.size(); ++k) {
      if (k) s += ">";
      s += "x" + std::to_string(ranking[k] + 1);
    }
    return s + ")";
  }
};

/// Sample of term orders: every kind under every variable ranking when
/// arity <= 4, otherwise every kind under the natural ranking plus
/// `extra_rankings` random ones drawn from `rng`.
inline std::vector<TermOrder> term_order_family(std::size_t arity, std::mt19937_64& rng,
                                                std::size_t extra_rankings = 6) {
  std::vector<std::vector<std::size_t>> rankings;
  std::vector<std::size_t> perm(arity);
  std::iota(perm.begin(), perm.end(), 0);
  if (arity <= 4) {
    do rankings.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    rankings.push_back(perm);
    for (std::size_t k = 0; k < extra_rankings; ++k) {
      std::shuffle(perm.begin(), perm.end(), rng);
      rankings.push_back(perm);
    }
  }
  std::vector<TermOrder> out;
  for (auto kind : {TermOrder::Kind::lex, TermOrder::Kind::graded_lex, TermOrder::Kind::graded_reverse_lex})
    for (const auto& r : rankings) out.push_back(TermOrder{kind, r});
  return out;
}

/// Sparse polynomial in x_1..x_n. Zero coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, FieldElement, GradedLexLess>;

  MultiPoly(std::size_t arity, const FieldSpec& spec) : arity_(arity), spec_(spec) {}

  static MultiPoly constant(std::size_t arity, const FieldElement& c) {
    MultiPoly p(arity, c.spec());
    p.add_term(Exponents(arity, 0), c);
    return p;
  }
  static MultiPoly monomial(std::size_t arity, const FieldElement& c, const Exponents& u) {
    MultiPoly p(arity, c.spec());
    p.add_term(u, c);
    return p;
  }
  /// x_{index+1}; `index` is zero-based.
  static MultiPoly variable(std::size_t arity, const FieldSpec& spec, std::size_t index) {
    Exponents u(arity, 0);
    u.at(index) = 1;
    return monomial(arity, FieldElement::one(spec), u);
  }
  /// Univariate polynomial in x_{index+1} from ascending coefficients.
  static MultiPoly univariate(std::size_t arity, std::size_t index, const std::vector<FieldElement>& coeffs,
                              const FieldSpec& spec) {
    MultiPoly p(arity, spec);
    Exponents u(arity, 0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      u.at(index) = static_cast<std::uint32_t>(k);
      p.add_term(u, coeffs[k]);
    }
    return p;
  }

  std::size_t arity() const noexcept { return arity_; }
  const FieldSpec& spec() const noexcept { return spec_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Degree total_degree() const {
    if (terms_.empty()) return Degree::minus_infinity();
    return Degree(static_cast<std::int64_t>(cnull::total_degree(terms_.rbegin()->first)));
  }

  Degree degree_in(std::size_t i) const {
    if (terms_.empty()) return Degree::minus_infinity();
    std::uint32_t d = 0;
    for (const auto& [u, c] : terms_) d = std::max(d, u.at(i));
    return Degree(d);
  }

  /// Stored coefficient of x^u, or zero.
  FieldElement coeff(const Exponents& u) const {
    check_arity(u.size());
    auto it = terms_.find(u);
    return it == terms_.end() ? FieldElement::zero(spec_) : it->second;
  }

  /// Adds c x^u to the polynomial.
  void add_term(const Exponents& u, const FieldElement& c) {
    check_arity(u.size());
    if (!(c.spec() == spec_)) throw argument_error("coefficient field does not match polynomial field");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(u, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& [u, c] : r.terms_) c = -c;
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [u, c] : o.terms_) add_term(u, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [u, c] : o.terms_) add_term(u, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly r(a.arity_, a.spec_);
    Exponents w(a.arity_);
    for (const auto& [u, c] : a.terms_) {
      for (const auto& [v, d] : b.terms_) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = u[i] + v[i];
        r.add_term(w, c * d);
      }
    }
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly scaled(const FieldElement& k) const {
    MultiPoly r(arity_, spec_);
    if (k.is_zero()) return r;
    for (const auto& [u, c] : terms_) r.terms_.emplace(u, c * k);
    return r;
  }

  /// c x^u times this polynomial.
  MultiPoly times_term(const FieldElement& k, const Exponents& u) const {
    check_arity(u.size());
    MultiPoly r(arity_, spec_);
    if (k.is_zero()) return r;
    Exponents w(arity_);
    for (const auto& [v, c] : terms_) {
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = u[i] + v[i];
      r.terms_.emplace(w, c * k);
    }
    return r;
  }

  MultiPoly pow(std::uint64_t e) const {
    MultiPoly result = constant(arity_, FieldElement::one(spec_));
    MultiPoly base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e > 0) base *= base;
    }
    return result;
  }

  FieldElement eval(std::span<const FieldElement> point) const {
    check_arity(point.size());
    std::vector<std::vector<FieldElement>> powers(arity_);
    for (std::size_t i = 0; i < arity_; ++i) powers[i].push_back(FieldElement::one(spec_));
    FieldElement sum = FieldElement::zero(spec_);
    for (const auto& [u, c] : terms_) {
      FieldElement term = c;
      for (std::size_t i = 0; i < arity_; ++i) {
        auto& pw = powers[i];
        while (pw.size() <= u[i]) pw.push_back(pw.back() * point[i]);
        term *= pw[u[i]];
      }
      sum += term;
    }
    return sum;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.arity_ == b.arity_ && a.spec_ == b.spec_ && a.terms_ == b.terms_;
  }

  void check_compatible(const MultiPoly& o) const {
    if (arity_ != o.arity_)
      throw argument_error("arity mismatch: " + std::to_string(arity_) + " vs " + std::to_string(o.arity_));
    if (!(spec_ == o.spec_))
      throw argument_error("field mismatch: " + spec_.to_string() + " vs " + o.spec_.to_string());
  }

  void check_arity(std::size_t n) const {
    if (n != arity_)
      throw argument_error("expected " + std::to_string(arity_) + " coordinates, got " + std::to_string(n));
  }

 private:
  std::size_t arity_;
  FieldSpec spec_;
  TermMap terms_;
};

namespace detail {

/// Rows 0..max of Pascal's triangle built by additions only, so the values
/// are correct in every characteristic.
inline std::vector<std::vector<FieldElement>> pascal_rows(const FieldSpec& spec, std::size_t max) {
  std::vector<std::vector<FieldElement>> rows;
  rows.reserve(max + 1);
  rows.push_back({FieldElement::one(spec)});
  for (std::size_t e = 1; e <= max; ++e) {
    std::vector<FieldElement> row(e + 1, FieldElement::one(spec));
    for (std::size_t k = 1; k < e; ++k) row[k] = rows[e - 1][k - 1] + rows[e - 1][k];
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void check_point(const MultiPoly& f, std::span<const FieldElement> s) {
  f.check_arity(s.size());
  for (const auto& v : s)
    if (!(v.spec() == f.spec())) throw argument_error("point field does not match polynomial field");
}

}  // namespace detail

/// g(x) = f(x + s). Terms whose exponent reaches `limit` in any coordinate
/// are dropped when a limit is given.
inline MultiPoly shift_truncated(const MultiPoly& f, std::span<const FieldElement> s,
                                 const std::optional<Exponents>& limit) {
  detail::check_point(f, s);
  if (limit) f.check_arity(limit->size());
  std::uint32_t max_exp = 0;
  for (const auto& [u, c] : f.terms())
    for (auto e : u) max_exp = std::max(max_exp, e);
  const auto binom = detail::pascal_rows(f.spec(), max_exp);

  MultiPoly current = f;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    std::vector<FieldElement> spow{FieldElement::one(f.spec())};
    for (std::uint32_t k = 1; k <= max_exp; ++k) spow.push_back(spow.back() * s[i]);
    std::uint32_t cap = limit ? (*limit)[i] : std::numeric_limits<std::uint32_t>::max();
    MultiPoly next(f.arity(), f.spec());
    for (const auto& [u, c] : current.terms()) {
      const auto e = u[i];
      Exponents v = u;
      for (std::uint32_t k = 0; k <= e && k < cap; ++k) {
        v[i] = k;
        next.add_term(v, c * binom[e][k] * spow[e - k]);
      }
    }
    current = std::move(next);
  }
  if (limit) {
    MultiPoly trimmed(f.arity(), f.spec());
    for (const auto& [u, c] : current.terms())
      if (componentwise_less(u, *limit)) trimmed.add_term(u, c);
    return trimmed;
  }
  return current;
}

/// g(x) = f(x + s); the coefficient of x^u in g is the Hasse coefficient f_u(s).
inline MultiPoly poly_shift(const MultiPoly& f, std::span<const FieldElement> s) {
  return shift_truncated(f, s, std::nullopt);
}

/// Hasse coefficients f_u(s) for every u < w, read off the shifted polynomial.
inline std::map<Exponents, FieldElement> hasse_coeffs(const MultiPoly& f, std::span<const FieldElement> s,
                                                      const Exponents& w) {
  f.check_arity(w.size());
  for (auto wi : w)
    if (wi == 0) throw argument_error("Hasse window must be at least 1 in every coordinate");
  auto shifted = shift_truncated(f, s, w);
  std::map<Exponents, FieldElement> out;
  for (auto& u : box(w)) out.emplace(u, shifted.coeff(u));
  return out;
}

/// The order-maximal exponent with a nonzero coefficient.
inline Exponents leading_monomial(const MultiPoly& f, const TermOrder& ord) {
  if (f.is_zero()) throw argument_error("leading monomial of the zero polynomial");
  if (ord.ranking.size() != f.arity()) throw argument_error("term order arity does not match polynomial");
  const Exponents* best = nullptr;
  for (const auto& [u, c] : f.terms())
    if (!best || ord.less(*best, u)) best = &u;
  return *best;
}

inline FieldElement coeff_of(const MultiPoly& f, const Exponents& u) { return f.coeff(u); }

}  // namespace cnull
