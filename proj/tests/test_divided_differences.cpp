#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace cnull;
using namespace cnull::testing;

namespace {

const FieldSpec Q = FieldSpec::rationals();

MultiPoly P(const char* text, std::size_t n, const FieldSpec& spec) { return parse_poly(text, n, spec); }

std::vector<FieldElement> pt(const FieldSpec& spec, std::initializer_list<long long> xs) {
  std::vector<FieldElement> v;
  for (auto x : xs) v.emplace_back(spec, x);
  return v;
}

FieldElement q(long num, unsigned long den = 1) { return FieldElement(Q, mpq_class(num, den)); }

MultisetGrid grid_of(const FieldSpec& spec,
                     std::initializer_list<std::initializer_list<std::pair<long long, std::uint32_t>>> sets) {
  std::vector<Multiset> v;
  for (const auto& s : sets) v.push_back(Multiset::of(spec, s));
  return MultisetGrid(std::move(v));
}

/// Picks a uniformly random coordinate with two distinct elements and a random pair in it.
PivotChooser random_pivots(Rng& rng) {
  return [&rng](const MultisetGrid& g) {
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < g.arity(); ++i)
      if (g.set(i).distinct() >= 2) eligible.push_back(i);
    auto i = eligible[uniform(rng, 0, eligible.size() - 1)];
    std::vector<FieldElement> elems;
    for (const auto& [x, m] : g.set(i).entries()) elems.push_back(x);
    std::shuffle(elems.begin(), elems.end(), rng);
    return Pivot{i, elems[0], elems[1]};
  };
}

}  // namespace

TEST(Bracket, DefinitionExamples) {
  auto f = P("x1^3 - 2*x1 + 5", 1, Q);
  EXPECT_EQ(bracket_def(f, grid_of(Q, {{{3, 1}}})), f.eval(pt(Q, {3})));
  EXPECT_EQ(bracket_def(P("x1^2", 1, Q), grid_of(Q, {{{0, 1}, {1, 1}}})), q(1));
  auto g = grid_of(Q, {{{0, 2}, {4, 1}}, {{1, 1}, {2, 1}}});
  EXPECT_EQ(bracket_def(P("x1^2*x2", 2, Q), g), q(1));
}

TEST(Bracket, RecursionExamples) {
  EXPECT_EQ(bracket_rec(P("x1^2", 1, Q), grid_of(Q, {{{0, 1}, {1, 1}, {2, 1}}})), q(1));
  // Single point of multiplicity t + 1: the Hasse coefficient f_t(a).
  auto f = P("x1^4 + x1", 1, Q);
  auto h = hasse_coeffs(f, pt(Q, {2}), {3});
  EXPECT_EQ(bracket_rec(f, grid_of(Q, {{{2, 3}}})), h.at({2}));
  EXPECT_EQ(bracket_rec(f, grid_of(Q, {{{2, 3}}})), q(24));
}

TEST(Bracket, ClassicalNewtonTable) {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    auto spec = trial % 2 ? Q : random_prime_field(rng, {7, 13, 101});
    std::map<FieldElement, std::uint32_t> distinct;
    auto k = uniform(rng, 1, 5);
    while (distinct.size() < k) distinct.emplace(random_element(spec, rng), 1);
    MultisetGrid grid({Multiset(spec, {distinct.begin(), distinct.end()})});
    std::vector<FieldElement> xs;
    for (const auto& [x, m] : distinct) xs.push_back(x);
    std::shuffle(xs.begin(), xs.end(), rng);
    auto f = random_poly(spec, 1, 8, 5, rng);
    EXPECT_EQ(bracket_def(f, grid), newton_leading(f, xs));
  }
}

TEST(Bracket, DefinitionEqualsRecursion) {
  Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    auto spec = trial % 3 == 0 ? Q : random_prime_field(rng);
    std::size_t n = uniform(rng, 1, 3);
    auto grid = random_grid(spec, n, 4, rng);
    auto f = random_poly(spec, n, 8, 6, rng);
    auto def = bracket_def(f, grid);
    EXPECT_EQ(bracket_rec(f, grid), def);
    EXPECT_EQ(bracket_rec(f, grid, random_pivots(rng)), def);
  }
}

TEST(Bracket, Errors) {
  auto g = grid_of(Q, {{{0, 1}, {1, 1}}});
  EXPECT_THROW(bracket_rec(P("x1", 2, Q), g), argument_error);
  EXPECT_THROW(bracket_def(P("x1", 1, FieldSpec::prime(3)), g), argument_error);
  PivotChooser bad = [](const MultisetGrid& gr) { return Pivot{0, gr.set(0).entries().begin()->first, gr.set(0).entries().begin()->first}; };
  EXPECT_THROW(bracket_rec(P("x1", 1, Q), g, bad), argument_error);
}

TEST(Alpha, Examples) {
  auto g01 = grid_of(Q, {{{0, 1}, {1, 1}}});
  auto t = alpha_table(g01);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.at(pt(Q, {0}), {0}), q(-1));
  EXPECT_EQ(t.at(pt(Q, {1}), {0}), q(1));

  auto t3 = alpha_table(grid_of(Q, {{{0, 1}, {1, 1}, {2, 1}}}));
  EXPECT_EQ(t3.at(pt(Q, {0}), {0}), q(1, 2));
  EXPECT_EQ(t3.at(pt(Q, {1}), {0}), q(-1));
  EXPECT_EQ(t3.at(pt(Q, {2}), {0}), q(1, 2));

  auto single = alpha_table(grid_of(Q, {{{5, 3}}}));
  EXPECT_EQ(single.size(), 3u);
  EXPECT_EQ(single.at(pt(Q, {5}), {2}), q(1));
  EXPECT_TRUE(single.at(pt(Q, {5}), {0}).is_zero());
  EXPECT_TRUE(single.at(pt(Q, {5}), {1}).is_zero());
}

TEST(Alpha, ClosedFormOrientation) {
  auto g01 = grid_of(Q, {{{0, 1}, {1, 1}}});
  EXPECT_EQ(alpha_top_closed_form(g01, pt(Q, {1})), q(1));
  EXPECT_EQ(alpha_top_closed_form(g01, pt(Q, {0})), q(-1));
  EXPECT_EQ(alpha_top_closed_form(grid_of(Q, {{{3, 2}}, {{4, 1}}}), pt(Q, {3, 4})), q(1));
  EXPECT_THROW(alpha_top_closed_form(g01, pt(Q, {2})), argument_error);

  // The table is ground truth; the closed form with (s_i - s') agrees with it
  // everywhere, while the opposite orientation is off by (-1)^{d - m(s)}.
  Rng rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    auto spec = trial % 2 ? Q : random_prime_field(rng, {5, 7, 13});
    std::size_t n = uniform(rng, 1, 3);
    auto grid = random_grid(spec, n, 4, rng);
    auto table = alpha_table(grid);
    for (const auto& s : grid.points()) {
      auto m = grid.multiplicity(s);
      auto top = m;
      for (auto& x : top) --x;
      const auto& a = table.at(s, top);
      EXPECT_FALSE(a.is_zero());
      EXPECT_EQ(alpha_top_closed_form(grid, s), a);
      FieldElement flipped = FieldElement::one(spec);
      std::uint64_t others = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& [r, mr] : grid.set(i).entries())
          if (!(r == s[i])) {
            flipped *= (r - s[i]).pow(mr);
            others += mr;
          }
      flipped = flipped.inv();
      EXPECT_EQ(flipped, others % 2 ? -a : a);
    }
  }
}

TEST(Alpha, NonTopEntriesCanVanish) {
  // 1/(x^2 (x^2 - 1)) has no 1/x term, so alpha at (0, u=0) is zero.
  auto g = grid_of(Q, {{{-1, 1}, {0, 2}, {1, 1}}});
  auto t = alpha_table(g);
  EXPECT_TRUE(t.at(pt(Q, {0}), {0}).is_zero());
  EXPECT_FALSE(t.at(pt(Q, {0}), {1}).is_zero());
}

TEST(Alpha, DomainAndUniqueness) {
  Rng rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    auto spec = trial % 2 ? Q : random_prime_field(rng);
    std::size_t n = uniform(rng, 1, 3);
    auto grid = random_grid(spec, n, 4, rng);
    auto table = alpha_table(grid);
    std::uint64_t prod = 1;
    for (auto d : grid.sizes()) prod *= d;
    EXPECT_EQ(table.size(), prod);
    EXPECT_EQ(alpha_table(grid).coefficients(), table.coefficients());
  }
}

TEST(LinearRelation, Examples) {
  auto g = grid_of(Q, {{{0, 2}, {3, 1}}, {{1, 1}, {2, 1}}});
  EXPECT_TRUE(check_linear_relation(P("x1^2*x2", 2, Q), g));
  EXPECT_TRUE(check_linear_relation(P("7", 2, Q), g));
  // Constant f: the alpha entries at u = 0 sum to zero.
  auto table = alpha_table(g);
  FieldElement sum = FieldElement::zero(Q);
  for (const auto& [key, a] : table.coefficients())
    if (total_degree(key.second) == 0) sum += a;
  EXPECT_TRUE(sum.is_zero());
  EXPECT_THROW(check_linear_relation(P("x1^4", 2, Q), g), precondition_error);
}

TEST(LinearRelation, RandomPolynomials) {
  Rng rng(45);
  for (int trial = 0; trial < 300; ++trial) {
    auto spec = trial % 3 == 0 ? Q : random_prime_field(rng);
    std::size_t n = uniform(rng, 1, 3);
    auto grid = random_grid(spec, n, 4, rng);
    auto sum_t = static_cast<std::uint32_t>(total_degree(grid.top_exponent()));
    auto f = random_poly(spec, n, sum_t, 6, rng);
    EXPECT_TRUE(check_linear_relation(f, grid));
  }
}

TEST(LinearRelation, DualBasisDetectsPerturbation) {
  Rng rng(46);
  for (int trial = 0; trial < 100; ++trial) {
    auto spec = trial % 2 ? Q : random_prime_field(rng, {3, 5, 7});
    std::size_t n = uniform(rng, 1, 3);
    auto grid = random_grid(spec, n, 4, rng);
    auto table = alpha_table(grid);
    auto pick = table.coefficients().begin();
    std::advance(pick, static_cast<long>(uniform(rng, 0, table.size() - 1)));
    const auto& [s, u] = pick->first;
    auto f = dual_basis_polynomial(grid, s, u);
    EXPECT_TRUE(check_linear_relation(f, table));
    auto bumped = table.with_entry(s, u, pick->second + random_nonzero(spec, rng));
    EXPECT_FALSE(check_linear_relation(f, bumped));
  }
}

TEST(LinearRelation, SingletonGridIsHasseExtraction) {
  Rng rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    auto spec = trial % 2 ? Q : random_prime_field(rng);
    std::size_t n = uniform(rng, 1, 3);
    std::vector<Multiset> sets;
    std::vector<FieldElement> a;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back(random_element(spec, rng));
      sets.emplace_back(spec, std::vector<std::pair<FieldElement, std::uint32_t>>{{a.back(), static_cast<std::uint32_t>(uniform(rng, 1, 3))}});
    }
    MultisetGrid grid(sets);
    auto table = alpha_table(grid);
    for (const auto& [key, c] : table.coefficients())
      EXPECT_EQ(c, key.second == grid.top_exponent() ? FieldElement::one(spec) : FieldElement::zero(spec));
    auto f = random_poly(spec, n, 8, 5, rng);
    EXPECT_EQ(bracket_rec(f, grid), hasse_by_binomials(f, a, grid.top_exponent()));
  }
}
