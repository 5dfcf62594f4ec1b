#pragma once

// Certificates that a polynomial is not in the vanishing ideal of a grid:
// explicit witnesses (s, u) with f_u(s) != 0, found by exhaustive search or
// through the divided-difference relation, and the punctured decomposition
// r = h * prod_i g_i / l_i.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cnull/divided_differences.hpp"
#include "cnull/error.hpp"
#include "cnull/field.hpp"
#include "cnull/ideal.hpp"
#include "cnull/multiset.hpp"
#include "cnull/poly.hpp"

namespace cnull {

/// A point s of the grid and u < m(s) with f_u(s) != 0.
struct Witness {
  std::vector<FieldElement> point;
  Exponents exponent;
  FieldElement value;

  friend bool operator==(const Witness&, const Witness&) = default;
};

enum class WitnessMethod { exhaustive, divided_difference };

inline std::string point_text(std::span<const FieldElement> s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i].to_string();
  return out + ")";
}

/// Shrinks each S_i to size t_i + 1 by repeatedly removing one copy of its
/// largest element.
inline MultisetGrid trim_grid(const MultisetGrid& grid, const Exponents& t) {
  if (t.size() != grid.arity()) throw argument_error("exponent arity does not match grid");
  std::vector<Multiset> sets;
  for (std::size_t i = 0; i < grid.arity(); ++i) {
    Multiset s = grid.set(i);
    if (s.size() <= t[i]) throw precondition_error("cannot trim S_" + std::to_string(i + 1) + " below t+1");
    while (s.size() > std::uint64_t{t[i]} + 1) s = s.without_one(s.entries().rbegin()->first);
    sets.push_back(std::move(s));
  }
  return MultisetGrid(std::move(sets));
}

/// Hypotheses of the nonvanishing theorem: deg f = t_1+...+t_n, the
/// coefficient of x^t is nonzero, and d_i > t_i.
inline void check_nonvanish_preconditions(const MultiPoly& f, const MultisetGrid& grid, const Exponents& t) {
  if (f.arity() != grid.arity()) throw argument_error("arity mismatch between polynomial and grid");
  if (!(f.spec() == grid.spec())) throw argument_error("field mismatch between polynomial and grid");
  if (t.size() != grid.arity()) throw argument_error("exponent t has the wrong arity");
  auto sum_t = static_cast<std::int64_t>(total_degree(t));
  if (f.total_degree() != Degree(sum_t))
    throw precondition_error("degree: deg f = " + f.total_degree().to_string() + " but t_1+...+t_n = " +
                             std::to_string(sum_t));
  if (f.coeff(t).is_zero()) throw precondition_error("top coefficient: coefficient of x^t in f is zero");
  auto d = grid.sizes();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (d[i] <= t[i])
      throw precondition_error("sizes: d(S_" + std::to_string(i + 1) + ") = " + std::to_string(d[i]) +
                               " is not greater than t_" + std::to_string(i + 1) + " = " + std::to_string(t[i]));
}

namespace detail {

inline std::optional<Witness> first_witness(const MultiPoly& f, const MultisetGrid& grid,
                                            const std::vector<std::vector<FieldElement>>& points, std::size_t begin,
                                            std::size_t end) {
  for (std::size_t k = begin; k < end; ++k) {
    const auto& s = points[k];
    auto m = grid.multiplicity(s);
    auto local = shift_truncated(f, s, m);
    // Lexicographically smallest u; terms are stored in graded order.
    const Exponents* best = nullptr;
    for (const auto& [u, c] : local.terms())
      if (!best || u < *best) best = &u;
    if (best) return Witness{s, *best, local.coeff(*best)};
  }
  return std::nullopt;
}

}  // namespace detail

/// Lexicographically first (s, u), u < m(s), with f_u(s) != 0 over the whole
/// grid. `workers` > 1 splits the points into contiguous blocks searched in
/// parallel; the earliest block with a witness wins, so the answer does not
/// depend on the worker count.
inline std::optional<Witness> exhaustive_witness_search(const MultiPoly& f, const MultisetGrid& grid,
                                                        unsigned workers = 1) {
  const auto points = grid.points();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(points.size())));
  if (workers == 1) return detail::first_witness(f, grid, points, 0, points.size());
  std::vector<std::optional<Witness>> found(workers);
  std::vector<std::thread> pool;
  const std::size_t block = (points.size() + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      auto begin = std::min(points.size(), w * block);
      auto end = std::min(points.size(), begin + block);
      found[w] = detail::first_witness(f, grid, points, begin, end);
    });
  }
  for (auto& t : pool) t.join();
  for (auto& w : found)
    if (w) return w;
  return std::nullopt;
}

/// Witness through the linear relation f_t = sum alpha^{(s)}_u f_u(s) on the
/// grid trimmed to sizes t + 1: returns the lexicographically first (s, u)
/// whose term alpha^{(s)}_u f_u(s) is nonzero.
inline std::optional<Witness> divided_difference_witness_search(const MultiPoly& f, const MultisetGrid& grid,
                                                                const Exponents& t) {
  auto trimmed = trim_grid(grid, t);
  auto table = alpha_table(trimmed);
  FieldElement total = FieldElement::zero(grid.spec());
  std::optional<Witness> first;
  for (const auto& s : trimmed.points()) {
    auto local = shift_truncated(f, s, trimmed.multiplicity(s));
    for (const auto& u : box(trimmed.multiplicity(s))) {
      auto term = table.at(s, u) * local.coeff(u);
      total += term;
      if (!first && !term.is_zero()) first = Witness{s, u, local.coeff(u)};
    }
  }
  if (!(total == f.coeff(t)))
    throw invariant_violation("linear relation failed: f_t = " + f.coeff(t).to_string() + " but the weighted sum is " +
                              total.to_string());
  return first;
}

/// A certificate that f is not in I(S). Fails with precondition_error when
/// the theorem's hypotheses do not hold and with invariant_violation if no
/// witness exists despite them.
inline Witness nonvanish_witness(const MultiPoly& f, const MultisetGrid& grid, const Exponents& t,
                                 WitnessMethod method, unsigned workers = 1) {
  check_nonvanish_preconditions(f, grid, t);
  auto w = method == WitnessMethod::exhaustive ? exhaustive_witness_search(f, grid, workers)
                                               : divided_difference_witness_search(f, grid, t);
  if (!w) throw invariant_violation("no nonvanishing witness found although the hypotheses hold");
  return *w;
}

/// Replays the reduction argument: with f = r + sum h_i g_i, the remainder is
/// nonzero, deg h_i <= deg f - d_i, every top-degree monomial of h_i g_i is
/// divisible by x_i^{d_i}, so x^t survives in r with its coefficient from f.
inline bool check_first_proof_path(const MultiPoly& f, const MultisetGrid& grid, const Exponents& t) {
  check_nonvanish_preconditions(f, grid, t);
  auto red = reduce(f, grid);
  if (red.remainder.is_zero()) return false;
  const auto d = grid.sizes();
  const auto gens = generators(grid);
  const auto deg_f = f.total_degree();
  MultiPoly sum(f.arity(), f.spec());
  for (std::size_t i = 0; i < grid.arity(); ++i) {
    const auto& h = red.cofactors[i];
    if (h.total_degree() > deg_f - d[i]) return false;
    auto prod = h * gens[i];
    for (const auto& [u, c] : prod.terms())
      if (Degree(static_cast<std::int64_t>(total_degree(u))) == deg_f && u[i] < d[i]) return false;
    sum += prod;
  }
  return sum.coeff(t).is_zero() && red.remainder.coeff(t) == f.coeff(t) && red.remainder + sum == f;
}

/// r = h * prod_i g_i / l_i with h != 0.
struct PuncturedResult {
  MultiPoly remainder;
  MultiPoly quotient;
  /// prod_i g_i / l_i.
  MultiPoly divisor;
  std::int64_t degree_bound;
};

/// prod_{s in S_i \ D_i} (x_i - s)^{m_i(s)}, i.e. g_i / l_i.
inline MultiPoly complement_product(const Multiset& outer, const Multiset& inner, std::size_t index, std::size_t arity) {
  const auto& spec = outer.spec();
  auto x = MultiPoly::variable(arity, spec, index);
  MultiPoly p = MultiPoly::constant(arity, FieldElement::one(spec));
  for (const auto& [s, m] : outer.entries())
    if (!inner.contains(s)) p *= (x - MultiPoly::constant(arity, s)).pow(m);
  return p;
}

/// Decomposes f that vanishes to full multiplicity on S except at one or
/// more points of D = D_1 x ... x D_n, each D_i a tight multisubset of S_i.
inline PuncturedResult punctured_decompose(const MultiPoly& f, const MultisetGrid& grid, const MultisetGrid& sub) {
  if (sub.arity() != grid.arity()) throw argument_error("D and S have different arity");
  if (!(sub.spec() == grid.spec())) throw argument_error("D and S use different fields");
  if (f.arity() != grid.arity()) throw argument_error("arity mismatch between polynomial and grid");
  if (!(f.spec() == grid.spec())) throw argument_error("field mismatch between polynomial and grid");
  for (std::size_t i = 0; i < grid.arity(); ++i)
    if (!sub.set(i).is_tight_subset_of(grid.set(i)))
      throw precondition_error("D_" + std::to_string(i + 1) + " is not a tight multisubset of S_" +
                               std::to_string(i + 1));

  auto bad = nonvanishing_points(f, grid);
  if (bad.empty()) throw precondition_error("no punctured point: f lies in I(S)");
  for (const auto& s : bad)
    if (!sub.contains(s)) throw precondition_error("f does not vanish at " + point_text(s) + ", which is outside D");

  auto remainder = reduce(f, grid).remainder;
  MultiPoly h = remainder;
  MultiPoly divisor = MultiPoly::constant(f.arity(), FieldElement::one(f.spec()));
  std::int64_t bound = 0;
  for (std::size_t i = 0; i < grid.arity(); ++i) {
    bound += static_cast<std::int64_t>(grid.set(i).size() - sub.set(i).size());
    auto q = complement_product(grid.set(i), sub.set(i), i, f.arity());
    divisor *= q;
    auto [quot, rem] = divide_univariate(h, i, q);
    if (!rem.is_zero())
      throw invariant_violation("remainder is not divisible by g_" + std::to_string(i + 1) + "/l_" +
                                std::to_string(i + 1));
    h = std::move(quot);
  }
  if (h.is_zero()) throw invariant_violation("punctured quotient h vanished");
  if (f.total_degree() < Degree(bound))
    throw invariant_violation("deg f = " + f.total_degree().to_string() + " is below the bound " +
                              std::to_string(bound));
  return {std::move(remainder), std::move(h), std::move(divisor), bound};
}

}  // namespace cnull
