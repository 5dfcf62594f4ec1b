#pragma once

// Value sets f(S_1, ..., S_n) as multisets, and the lower bound on their size
// for polynomials a_1 x_1^k + ... + a_n x_n^k + g with deg g < k.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "cnull/error.hpp"
#include "cnull/field.hpp"
#include "cnull/multiset.hpp"
#include "cnull/poly.hpp"

namespace cnull {

/// Every value c = f(s), s in S, with multiplicity
/// max { |m(s)| - n + 1 : f(s) = c }. Enumerates the whole grid; `workers`
/// splits the points into blocks whose partial results merge by maximum.
inline Multiset value_set_multiset(const MultiPoly& f, const MultisetGrid& grid, unsigned workers = 1) {
  if (f.arity() != grid.arity()) throw argument_error("arity mismatch between polynomial and grid");
  if (!(f.spec() == grid.spec())) throw argument_error("field mismatch between polynomial and grid");
  const auto points = grid.points();
  const auto n = grid.arity();
  using Partial = std::map<FieldElement, std::uint32_t>;
  auto scan = [&](std::size_t begin, std::size_t end, Partial& out) {
    for (std::size_t k = begin; k < end; ++k) {
      auto m = static_cast<std::uint32_t>(grid.weight(points[k]) - n + 1);
      auto [it, inserted] = out.try_emplace(f.eval(points[k]), m);
      if (!inserted) it->second = std::max(it->second, m);
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(points.size())));
  std::vector<Partial> parts(workers);
  if (workers == 1) {
    scan(0, points.size(), parts[0]);
  } else {
    const std::size_t block = (points.size() + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        auto begin = std::min(points.size(), w * block);
        scan(begin, std::min(points.size(), begin + block), parts[w]);
      });
    }
    for (auto& t : pool) t.join();
  }
  Partial merged;
  for (const auto& part : parts) {
    for (const auto& [c, m] : part) {
      auto [it, inserted] = merged.try_emplace(c, m);
      if (!inserted) it->second = std::max(it->second, m);
    }
  }
  return Multiset(f.spec(), {merged.begin(), merged.end()});
}

struct SunReport {
  std::uint64_t lhs;  // d(f(S_1, ..., S_n))
  std::uint64_t rhs;  // min(p(F), sum floor((d_i - 1)/k) + 1), no cap over Q
  bool holds;
  MultiPoly polynomial;
};

/// a_1 x_1^k + ... + a_n x_n^k + g.
inline MultiPoly diagonal_polynomial(const std::vector<FieldElement>& a, std::uint32_t k, const MultiPoly& g) {
  if (a.size() != g.arity()) throw argument_error("need one coefficient per variable");
  MultiPoly f = g;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Exponents u(a.size(), 0);
    u[i] = k;
    f.add_term(u, a[i]);
  }
  return f;
}

inline SunReport sun_check(const std::vector<FieldElement>& a, std::uint32_t k, const MultiPoly& g,
                           const MultisetGrid& grid, unsigned workers = 1) {
  if (k == 0) throw precondition_error("k must be a positive integer");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].is_zero()) throw precondition_error("coefficient a_" + std::to_string(i + 1) + " is zero");
  if (g.total_degree() >= Degree(k))
    throw precondition_error("deg g = " + g.total_degree().to_string() + " is not below k = " + std::to_string(k));
  auto f = diagonal_polynomial(a, k, g);
  auto values = value_set_multiset(f, grid, workers);
  std::uint64_t bound = 1;
  for (auto d : grid.sizes()) bound += (d - 1) / k;
  if (grid.spec().is_prime()) bound = std::min<std::uint64_t>(bound, grid.spec().modulus());
  SunReport r{values.size(), bound, false, std::move(f)};
  r.holds = r.lhs >= r.rhs;
  return r;
}

}  // namespace cnull
