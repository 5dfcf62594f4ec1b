#pragma once

// The vanishing ideal of a multiset grid: generators g_i, reduction modulo
// (g_1, ..., g_n), local and global membership, and the Groebner-basis
// properties of the generators.

#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cnull/error.hpp"
#include "cnull/field.hpp"
#include "cnull/multiset.hpp"
#include "cnull/poly.hpp"

namespace cnull {

/// f = remainder + sum_i cofactors[i] * g_i.
struct ReductionResult {
  MultiPoly remainder;
  std::vector<MultiPoly> cofactors;
};

/// g_i(x_i) = prod_{s in S} (x_i - s)^{m(s)}, monic of degree d(S), as a
/// polynomial in `arity` variables. `index` is zero-based.
inline MultiPoly generator(const Multiset& set, std::size_t index, std::size_t arity) {
  if (index >= arity) throw argument_error("generator index out of range");
  const auto& spec = set.spec();
  // Ascending coefficient list of the univariate product.
  std::vector<FieldElement> coeffs{FieldElement::one(spec)};
  for (const auto& [s, m] : set.entries()) {
    for (std::uint32_t k = 0; k < m; ++k) {
      std::vector<FieldElement> next(coeffs.size() + 1, FieldElement::zero(spec));
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        next[j + 1] += coeffs[j];
        next[j] -= coeffs[j] * s;
      }
      coeffs = std::move(next);
    }
  }
  return MultiPoly::univariate(arity, index, coeffs, spec);
}

inline std::vector<MultiPoly> generators(const MultisetGrid& grid) {
  std::vector<MultiPoly> gs;
  for (std::size_t i = 0; i < grid.arity(); ++i) gs.push_back(generator(grid.set(i), i, grid.arity()));
  return gs;
}

namespace detail {

/// A monic polynomial in one variable: x_var^degree + tail.
struct MonicDivisor {
  std::size_t var;
  std::uint32_t degree;
  MultiPoly tail;
};

inline MonicDivisor as_monic_divisor(const MultiPoly& g, std::size_t var) {
  if (g.is_zero()) throw argument_error("divisor is zero");
  std::uint32_t d = 0;
  for (const auto& [u, c] : g.terms()) {
    for (std::size_t j = 0; j < u.size(); ++j)
      if (j != var && u[j] != 0) throw argument_error("divisor is not univariate in x" + std::to_string(var + 1));
    d = std::max(d, u[var]);
  }
  Exponents top(g.arity(), 0);
  top[var] = d;
  if (!g.coeff(top).is_one()) throw argument_error("divisor is not monic");
  MultiPoly tail = g;
  tail.add_term(top, -FieldElement::one(g.spec()));
  return {var, d, std::move(tail)};
}

/// Repeatedly replaces the graded-lex largest monomial divisible by some
/// x_var^degree, using the first divisor (in list order) that applies.
inline ReductionResult reduce_by(const MultiPoly& f, const std::vector<MonicDivisor>& divisors) {
  MultiPoly rest = f;
  std::vector<MultiPoly> cof(divisors.size(), MultiPoly(f.arity(), f.spec()));

  auto reducer = [&](const Exponents& u) -> std::ptrdiff_t {
    for (std::size_t k = 0; k < divisors.size(); ++k)
      if (u[divisors[k].var] >= divisors[k].degree) return static_cast<std::ptrdiff_t>(k);
    return -1;
  };

  // Terms at or above `ceiling` are already irreducible: each step only
  // introduces graded-lex smaller monomials.
  std::optional<Exponents> ceiling;
  while (true) {
    const auto& terms = rest.terms();
    auto top = ceiling ? terms.lower_bound(*ceiling) : terms.end();
    std::optional<std::pair<Exponents, std::size_t>> pick;
    for (auto it = std::make_reverse_iterator(top); it != terms.rend(); ++it) {
      auto k = reducer(it->first);
      if (k >= 0) {
        pick.emplace(it->first, static_cast<std::size_t>(k));
        break;
      }
    }
    if (!pick) break;
    const auto& [u, k] = *pick;
    const auto& div = divisors[k];
    FieldElement c = rest.coeff(u);
    Exponents v = u;
    v[div.var] -= div.degree;
    cof[k].add_term(v, c);
    rest.add_term(u, -c);
    rest -= div.tail.times_term(c, v);
    ceiling = u;
  }
  return {std::move(rest), std::move(cof)};
}

}  // namespace detail

/// Reduction of f modulo (g_1, ..., g_n). The remainder has degree < d_i in
/// every x_i and is unique; cofactors are determined by always rewriting the
/// graded-lex largest reducible monomial with the lowest applicable index.
inline ReductionResult reduce(const MultiPoly& f, const MultisetGrid& grid) {
  if (f.arity() != grid.arity())
    throw argument_error("arity mismatch: polynomial has " + std::to_string(f.arity()) + " variables, grid has " +
                         std::to_string(grid.arity()));
  if (!(f.spec() == grid.spec())) throw argument_error("field mismatch between polynomial and grid");
  std::vector<detail::MonicDivisor> divs;
  for (std::size_t i = 0; i < grid.arity(); ++i)
    divs.push_back(detail::as_monic_divisor(generator(grid.set(i), i, grid.arity()), i));
  return detail::reduce_by(f, divs);
}

/// Division by a monic polynomial in the single variable x_{var+1}.
/// Returns {quotient, remainder}.
inline std::pair<MultiPoly, MultiPoly> divide_univariate(const MultiPoly& f, std::size_t var, const MultiPoly& divisor) {
  f.check_compatible(divisor);
  auto r = detail::reduce_by(f, {detail::as_monic_divisor(divisor, var)});
  return {std::move(r.cofactors.front()), std::move(r.remainder)};
}

/// f in I(s, w): every Hasse coefficient f_u(s) with u < w vanishes.
inline bool local_member(const MultiPoly& f, std::span<const FieldElement> s, const Exponents& w) {
  f.check_arity(w.size());
  for (auto wi : w)
    if (wi == 0) throw argument_error("multiplicity vector must be at least 1 in every coordinate");
  return shift_truncated(f, s, w).is_zero();
}

enum class MembershipMethod { remainder, pointwise };

/// f in I(S). The remainder test and the pointwise Hasse test agree.
inline bool grid_member(const MultiPoly& f, const MultisetGrid& grid, MembershipMethod method) {
  if (method == MembershipMethod::remainder) return reduce(f, grid).remainder.is_zero();
  if (f.arity() != grid.arity()) throw argument_error("arity mismatch between polynomial and grid");
  if (!(f.spec() == grid.spec())) throw argument_error("field mismatch between polynomial and grid");
  for (const auto& s : grid.points())
    if (!local_member(f, s, grid.multiplicity(s))) return false;
  return true;
}

/// Points s of the grid with f not in I(s, m(s)), in lexicographic order.
inline std::vector<std::vector<FieldElement>> nonvanishing_points(const MultiPoly& f, const MultisetGrid& grid) {
  std::vector<std::vector<FieldElement>> out;
  for (auto& s : grid.points())
    if (!local_member(f, s, grid.multiplicity(s))) out.push_back(std::move(s));
  return out;
}

/// {u : u_i < d_i}, a basis of F[x]/I.
inline std::vector<Exponents> standard_monomials(const MultisetGrid& grid) { return box(grid.sizes()); }

/// For f in I, the leading monomial under every supplied order is divisible
/// by some x_i^{d_i}.
inline bool universal_gb_check(const MultiPoly& f, const MultisetGrid& grid, std::span<const TermOrder> orders) {
  if (f.is_zero()) throw precondition_error("universal Groebner check needs a nonzero polynomial");
  if (!grid_member(f, grid, MembershipMethod::remainder))
    throw precondition_error("polynomial is not in the ideal of the grid");
  const auto d = grid.sizes();
  for (const auto& ord : orders) {
    auto lm = leading_monomial(f, ord);
    bool divisible = false;
    for (std::size_t i = 0; i < d.size(); ++i) divisible = divisible || lm[i] >= d[i];
    if (!divisible) return false;
  }
  return true;
}

/// Buchberger's criterion for the pair (g_i, g_j): their S-polynomial
/// x_j^{d_j} g_i - x_i^{d_i} g_j reduces to zero.
inline bool s_polynomial_reduces_to_zero(const MultisetGrid& grid, std::size_t i, std::size_t j) {
  if (i == j || i >= grid.arity() || j >= grid.arity()) throw argument_error("need two distinct generator indices");
  const auto n = grid.arity();
  const auto d = grid.sizes();
  Exponents xi(n, 0), xj(n, 0);
  xi[i] = d[i];
  xj[j] = d[j];
  const auto one = FieldElement::one(grid.spec());
  auto spoly = generator(grid.set(i), i, n).times_term(one, xj) - generator(grid.set(j), j, n).times_term(one, xi);
  return reduce(spoly, grid).remainder.is_zero();
}

/// Over the rationals with integral f and integral grid elements, the
/// remainder and every cofactor stay integral.
inline bool subring_closure_check(const MultiPoly& f, const MultisetGrid& grid) {
  if (f.spec().is_prime()) throw precondition_error("integrality check needs the rational field");
  for (const auto& [u, c] : f.terms())
    if (!c.is_integral()) throw precondition_error("polynomial has a non-integral coefficient " + c.to_string());
  for (const auto& set : grid.sets())
    for (const auto& [s, m] : set.entries())
      if (!s.is_integral()) throw precondition_error("grid element " + s.to_string() + " is not an integer");
  auto r = reduce(f, grid);
  auto integral = [](const MultiPoly& p) {
    for (const auto& [u, c] : p.terms())
      if (!c.is_integral()) return false;
    return true;
  };
  if (!integral(r.remainder)) return false;
  for (const auto& h : r.cofactors)
    if (!integral(h)) return false;
  return true;
}

}  // namespace cnull
