#pragma once

// Generalized divided differences f[S] over a multiset grid, computed two
// ways (from the reduction remainder and by the two-point recursion), and the
// coefficients alpha^{(s)}_u expressing f_t as a combination of Hasse
// coefficients at the grid points.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cnull/error.hpp"
#include "cnull/field.hpp"
#include "cnull/ideal.hpp"
#include "cnull/multiset.hpp"
#include "cnull/poly.hpp"

namespace cnull {

/// f[S]: coefficient of x^{d(S)-1} in f mod (g_1, ..., g_n).
inline FieldElement bracket_def(const MultiPoly& f, const MultisetGrid& grid) {
  return reduce(f, grid).remainder.coeff(grid.top_exponent());
}

/// One step of the recursion: coordinate `coord`, distinct elements a and b.
struct Pivot {
  std::size_t coord;
  FieldElement a;
  FieldElement b;
};

/// Lowest coordinate holding two distinct elements, and its two smallest
/// elements. Empty when every coordinate is a single point.
inline std::optional<Pivot> canonical_pivot(const MultisetGrid& grid) {
  for (std::size_t i = 0; i < grid.arity(); ++i) {
    const auto& entries = grid.set(i).entries();
    if (entries.size() >= 2) {
      auto it = entries.begin();
      const auto& a = it->first;
      const auto& b = std::next(it)->first;
      return Pivot{i, a, b};
    }
  }
  return std::nullopt;
}

/// Chooses the pivot at each recursion step; must return a pivot whenever
/// some coordinate has two distinct elements.
using PivotChooser = std::function<Pivot(const MultisetGrid&)>;

namespace detail {

inline bool is_single_point(const MultisetGrid& grid) {
  for (const auto& s : grid.sets())
    if (s.distinct() != 1) return false;
  return true;
}

inline void check_pivot(const MultisetGrid& grid, const Pivot& p) {
  const auto& set = grid.set(p.coord);
  if (p.a == p.b || !set.contains(p.a) || !set.contains(p.b))
    throw argument_error("pivot must name two distinct elements of one coordinate");
}

}  // namespace detail

/// f[S] by the recursion f[S] = (f[S'] - f[S'']) / (b - a), where S' and S''
/// drop one copy of a and of b, ending at single points where f[S] is the
/// Hasse coefficient f_t(a). Sub-brackets are memoized by sub-grid.
inline FieldElement bracket_rec(const MultiPoly& f, const MultisetGrid& grid, const PivotChooser& choose = {}) {
  if (f.arity() != grid.arity()) throw argument_error("arity mismatch between polynomial and grid");
  if (!(f.spec() == grid.spec())) throw argument_error("field mismatch between polynomial and grid");
  std::map<MultisetGrid, FieldElement> memo;
  std::function<FieldElement(const MultisetGrid&)> eval = [&](const MultisetGrid& g) -> FieldElement {
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    FieldElement value = FieldElement::zero(g.spec());
    if (detail::is_single_point(g)) {
      std::vector<FieldElement> a;
      for (const auto& s : g.sets()) a.push_back(s.entries().begin()->first);
      value = shift_truncated(f, a, g.sizes()).coeff(g.top_exponent());
    } else {
      Pivot p = choose ? choose(g) : *canonical_pivot(g);
      detail::check_pivot(g, p);
      const auto& set = g.set(p.coord);
      auto without_a = eval(g.with_set(p.coord, set.without_one(p.a)));
      auto without_b = eval(g.with_set(p.coord, set.without_one(p.b)));
      value = (without_a - without_b) / (p.b - p.a);
    }
    memo.emplace(g, value);
    return value;
  };
  return eval(grid);
}

/// (point s, exponent u) indexing one Hasse coefficient f_u(s).
using PointExponent = std::pair<std::vector<FieldElement>, Exponents>;

/// alpha^{(s)}_u for every s in the grid and u < m(s).
class AlphaTable {
 public:
  using Coefficients = std::map<PointExponent, FieldElement>;

  AlphaTable(MultisetGrid grid, Coefficients coeffs) : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {}

  const MultisetGrid& grid() const noexcept { return grid_; }
  const Coefficients& coefficients() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  const FieldElement& at(std::span<const FieldElement> point, const Exponents& u) const {
    auto it = coeffs_.find({std::vector<FieldElement>(point.begin(), point.end()), u});
    if (it == coeffs_.end()) throw argument_error("no alpha coefficient for that point and exponent");
    return it->second;
  }

  /// Copy with one coefficient replaced.
  AlphaTable with_entry(std::span<const FieldElement> point, const Exponents& u, const FieldElement& value) const {
    AlphaTable copy = *this;
    auto it = copy.coeffs_.find({std::vector<FieldElement>(point.begin(), point.end()), u});
    if (it == copy.coeffs_.end()) throw argument_error("no alpha coefficient for that point and exponent");
    it->second = value;
    return copy;
  }

  /// sum over (s, u) of alpha^{(s)}_u f_u(s).
  FieldElement apply(const MultiPoly& f) const {
    FieldElement sum = FieldElement::zero(grid_.spec());
    for (const auto& s : grid_.points()) {
      auto m = grid_.multiplicity(s);
      auto local = shift_truncated(f, s, m);
      for (const auto& [u, c] : local.terms()) sum += coeffs_.at({s, u}) * c;
    }
    return sum;
  }

 private:
  MultisetGrid grid_;
  Coefficients coeffs_;
};

/// Expands the bracket recursion symbolically: each sub-grid maps to a linear
/// combination of base terms f_u(s), with memoization on the sub-grid.
inline AlphaTable alpha_table(const MultisetGrid& grid) {
  using Combination = AlphaTable::Coefficients;
  const auto& spec = grid.spec();
  std::map<MultisetGrid, Combination> memo;
  std::function<const Combination&(const MultisetGrid&)> expand = [&](const MultisetGrid& g) -> const Combination& {
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    Combination comb;
    if (detail::is_single_point(g)) {
      std::vector<FieldElement> a;
      for (const auto& s : g.sets()) a.push_back(s.entries().begin()->first);
      comb.emplace(PointExponent{a, g.top_exponent()}, FieldElement::one(spec));
    } else {
      Pivot p = *canonical_pivot(g);
      const auto& set = g.set(p.coord);
      auto scale = (p.b - p.a).inv();
      const auto& left = expand(g.with_set(p.coord, set.without_one(p.a)));
      for (const auto& [key, c] : left) {
        auto [it, inserted] = comb.try_emplace(key, c * scale);
        if (!inserted) it->second += c * scale;
      }
      const auto& right = expand(g.with_set(p.coord, set.without_one(p.b)));
      for (const auto& [key, c] : right) {
        auto [it, inserted] = comb.try_emplace(key, -(c * scale));
        if (!inserted) it->second -= c * scale;
      }
    }
    return memo.emplace(g, std::move(comb)).first->second;
  };

  Combination table;
  for (const auto& s : grid.points())
    for (auto& u : box(grid.multiplicity(s))) table.emplace(PointExponent{s, u}, FieldElement::zero(spec));
  for (const auto& [key, c] : expand(grid)) {
    auto it = table.find(key);
    if (it == table.end()) throw invariant_violation("recursion produced a term outside the grid");
    it->second = c;
  }
  return AlphaTable(grid, std::move(table));
}

/// prod_i prod_{s' in S_i, s' != s_i} (s_i - s')^{-m_i(s')}, the coefficient
/// of f_{m(s)-1}(s).
inline FieldElement alpha_top_closed_form(const MultisetGrid& grid, std::span<const FieldElement> s) {
  if (!grid.contains(s)) throw argument_error("point is not in the grid");
  FieldElement denom = FieldElement::one(grid.spec());
  for (std::size_t i = 0; i < grid.arity(); ++i)
    for (const auto& [other, m] : grid.set(i).entries())
      if (!(other == s[i])) denom *= (s[i] - other).pow(m);
  return denom.inv();
}

inline void check_relation_degree(const MultiPoly& f, const MultisetGrid& grid) {
  if (f.arity() != grid.arity()) throw argument_error("arity mismatch between polynomial and grid");
  auto bound = static_cast<std::int64_t>(total_degree(grid.top_exponent()));
  if (f.total_degree() > Degree(bound))
    throw precondition_error("degree " + f.total_degree().to_string() + " exceeds t_1+...+t_n = " +
                             std::to_string(bound));
}

/// coeff_of(f, t) == sum alpha^{(s)}_u f_u(s), against a given table.
inline bool check_linear_relation(const MultiPoly& f, const AlphaTable& table) {
  check_relation_degree(f, table.grid());
  return f.coeff(table.grid().top_exponent()) == table.apply(f);
}

inline bool check_linear_relation(const MultiPoly& f, const MultisetGrid& grid) {
  check_relation_degree(f, grid);
  return check_linear_relation(f, alpha_table(grid));
}

/// prod_i (x_i - s_i)^{u_i} prod_{r in S_i, r != s_i} (x_i - r)^{m_i(r)}.
/// Its Hasse coefficients at grid points vanish below u except f_u(s) itself.
inline MultiPoly dual_basis_polynomial(const MultisetGrid& grid, std::span<const FieldElement> s, const Exponents& u) {
  if (!grid.contains(s)) throw argument_error("point is not in the grid");
  const auto n = grid.arity();
  const auto& spec = grid.spec();
  MultiPoly f = MultiPoly::constant(n, FieldElement::one(spec));
  for (std::size_t i = 0; i < n; ++i) {
    auto x = MultiPoly::variable(n, spec, i);
    f *= (x - MultiPoly::constant(n, s[i])).pow(u.at(i));
    for (const auto& [r, m] : grid.set(i).entries())
      if (!(r == s[i])) f *= (x - MultiPoly::constant(n, r)).pow(m);
  }
  return f;
}

}  // namespace cnull
