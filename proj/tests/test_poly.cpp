#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace cnull;
using namespace cnull::testing;

namespace {

MultiPoly P(const char* text, std::size_t n, const FieldSpec& spec) { return parse_poly(text, n, spec); }

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F5 = FieldSpec::prime(5);

std::vector<FieldElement> pt(const FieldSpec& spec, std::initializer_list<long long> xs) {
  std::vector<FieldElement> v;
  for (auto x : xs) v.emplace_back(spec, x);
  return v;
}

}  // namespace

TEST(MultiPoly, Arithmetic) {
  EXPECT_EQ(P("(x1+x2)*(x1-x2)", 2, Q), P("x1^2 - x2^2", 2, Q));
  auto f = P("3*x1*x2 + 7", 2, Q);
  EXPECT_EQ(f + MultiPoly(2, Q), f);
  auto x = MultiPoly::variable(1, F2, 0);
  auto one = MultiPoly::constant(1, FieldElement::one(F2));
  EXPECT_EQ((x + one) * (x + one), P("x1^2 + 1", 1, F2));
  EXPECT_TRUE((f - f).is_zero());
  EXPECT_TRUE((f - f).terms().empty());
}

TEST(MultiPoly, MismatchErrors) {
  EXPECT_THROW(P("x1", 1, Q) + P("x1", 2, Q), argument_error);
  EXPECT_THROW(P("x1", 1, Q) * P("x1", 1, F5), argument_error);
  EXPECT_THROW(P("x1", 2, Q).eval(pt(Q, {1})), argument_error);
}

TEST(MultiPoly, Degree) {
  MultiPoly zero(2, Q);
  EXPECT_TRUE(zero.total_degree().is_minus_infinity());
  EXPECT_LT(zero.total_degree(), Degree(0));
  EXPECT_LT(zero.total_degree() - 5, Degree(-100));
  EXPECT_EQ(P("x1^3*x2 + x2^2", 2, Q).total_degree(), Degree(4));
  EXPECT_EQ(P("x1^3*x2 + x2^2", 2, Q).degree_in(1), Degree(2));
  EXPECT_EQ(zero.total_degree().to_string(), "-inf");
}

TEST(MultiPoly, Eval) {
  EXPECT_EQ(P("x1*x2", 2, Q).eval(pt(Q, {2, 3})), FieldElement(Q, 6LL));
  EXPECT_EQ(MultiPoly(3, Q).eval(pt(Q, {1, 2, 3})), FieldElement::zero(Q));
  EXPECT_EQ(P("x1^2 - x1", 1, F5).eval(pt(F5, {3})), FieldElement(F5, 1LL));
}

TEST(MultiPoly, Shift) {
  EXPECT_EQ(poly_shift(P("x1^2", 1, F5), pt(F5, {3})), P("x1^2 + x1 + 4", 1, F5));
  auto f = P("x1^3*x2 - 2*x2 + 5", 2, Q);
  EXPECT_EQ(poly_shift(f, pt(Q, {0, 0})), f);
  EXPECT_EQ(poly_shift(P("x1 - 4", 1, Q), pt(Q, {4})), P("x1", 1, Q));
}

TEST(MultiPoly, HasseExamples) {
  auto h = hasse_coeffs(P("x1^2", 1, Q), pt(Q, {1}), {3});
  EXPECT_EQ(h.at({0}), FieldElement(Q, 1LL));
  EXPECT_EQ(h.at({1}), FieldElement(Q, 2LL));
  EXPECT_EQ(h.at({2}), FieldElement(Q, 1LL));

  auto h5 = hasse_coeffs(P("x1^2", 1, F5), pt(F5, {3}), {2});
  EXPECT_EQ(h5.size(), 2u);
  EXPECT_EQ(h5.at({0}), FieldElement(F5, 4LL));
  EXPECT_EQ(h5.at({1}), FieldElement(F5, 1LL));

  // Characteristic 2: the derivative 2x vanishes but the Hasse coefficients do not.
  auto h2 = hasse_coeffs(P("x1^2", 1, F2), pt(F2, {1}), {3});
  EXPECT_EQ(h2.at({0}), FieldElement(F2, 1LL));
  EXPECT_EQ(h2.at({1}), FieldElement(F2, 0LL));
  EXPECT_EQ(h2.at({2}), FieldElement(F2, 1LL));

  EXPECT_THROW(hasse_coeffs(P("x1", 1, Q), pt(Q, {0}), {0}), argument_error);
}

TEST(MultiPoly, HasseMatchesBinomialFormula) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto spec = trial % 4 == 0 ? Q : random_prime_field(rng);
    std::size_t n = uniform(rng, 1, 3);
    auto f = random_poly(spec, n, 7, 6, rng);
    std::vector<FieldElement> s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(random_element(spec, rng));
    Exponents w(n);
    for (auto& x : w) x = static_cast<std::uint32_t>(uniform(rng, 1, 4));
    for (const auto& [u, c] : hasse_coeffs(f, s, w)) EXPECT_EQ(c, hasse_by_binomials(f, s, u));
  }
}

TEST(MultiPoly, ShiftComposition) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    auto spec = trial % 3 == 0 ? Q : random_prime_field(rng);
    std::size_t n = uniform(rng, 1, 3);
    auto f = random_poly(spec, n, 6, 5, rng);
    std::vector<FieldElement> s, minus;
    for (std::size_t i = 0; i < n; ++i) {
      s.push_back(random_element(spec, rng));
      minus.push_back(-s.back());
    }
    auto g = poly_shift(f, s);
    EXPECT_EQ(poly_shift(g, minus), f);
    EXPECT_EQ(g.total_degree(), f.total_degree());
    // g(x) = f(x + s) pointwise.
    std::vector<FieldElement> x, xs;
    for (std::size_t i = 0; i < n; ++i) {
      x.push_back(random_element(spec, rng));
      xs.push_back(x.back() + s[i]);
    }
    EXPECT_EQ(g.eval(x), f.eval(xs));
  }
}

TEST(MultiPoly, HasseReconstruction) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    auto spec = trial % 3 == 0 ? Q : random_prime_field(rng);
    std::size_t n = uniform(rng, 1, 3);
    Exponents w(n);
    for (auto& x : w) x = static_cast<std::uint32_t>(uniform(rng, 1, 4));
    auto f = random_poly_in_box(spec, w, 6, rng);
    std::vector<FieldElement> s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(random_element(spec, rng));
    MultiPoly rebuilt(n, spec);
    for (const auto& [u, c] : hasse_coeffs(f, s, w)) {
      MultiPoly term = MultiPoly::constant(n, c);
      for (std::size_t i = 0; i < n; ++i)
        term *= (MultiPoly::variable(n, spec, i) - MultiPoly::constant(n, s[i])).pow(u[i]);
      rebuilt += term;
    }
    EXPECT_EQ(rebuilt, f);
  }
}

TEST(MultiPoly, TopHasseCoefficientsIgnoreShift) {
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    auto spec = trial % 3 == 0 ? Q : random_prime_field(rng);
    std::size_t n = uniform(rng, 1, 3);
    auto f = random_poly(spec, n, 6, 5, rng);
    if (f.is_zero()) continue;
    auto deg = static_cast<std::uint64_t>(f.total_degree().value());
    Exponents w(n, static_cast<std::uint32_t>(deg + 1));
    std::vector<FieldElement> s1, s2;
    for (std::size_t i = 0; i < n; ++i) {
      s1.push_back(random_element(spec, rng));
      s2.push_back(random_element(spec, rng));
    }
    auto h1 = hasse_coeffs(f, s1, w);
    auto h2 = hasse_coeffs(f, s2, w);
    for (const auto& [u, c] : h1)
      if (total_degree(u) >= deg) {
        EXPECT_EQ(c, h2.at(u));
      }
  }
}

TEST(TermOrder, LeadingMonomial) {
  auto f = P("x1 + x2^2", 2, Q);
  EXPECT_EQ(leading_monomial(f, TermOrder::natural(TermOrder::Kind::lex, 2)), (Exponents{1, 0}));
  EXPECT_EQ(leading_monomial(f, TermOrder::natural(TermOrder::Kind::graded_lex, 2)), (Exponents{0, 2}));
  auto m = P("3*x1^2*x2", 2, Q);
  EXPECT_EQ(leading_monomial(m, TermOrder::natural(TermOrder::Kind::graded_reverse_lex, 2)), (Exponents{2, 1}));
  EXPECT_THROW(leading_monomial(MultiPoly(2, Q), TermOrder::natural(TermOrder::Kind::lex, 2)), argument_error);
}

TEST(TermOrder, GrevlexTieBreak) {
  // x1*x3 vs x2^2 under grevlex(x1>x2>x3): x2^2 is larger (smaller power of x3).
  auto ord = TermOrder::natural(TermOrder::Kind::graded_reverse_lex, 3);
  EXPECT_TRUE(ord.less({1, 0, 1}, {0, 2, 0}));
  auto grlex = TermOrder::natural(TermOrder::Kind::graded_lex, 3);
  EXPECT_TRUE(grlex.less({0, 2, 0}, {1, 0, 1}));
}

TEST(TermOrder, FamilyIsTotalAndMultiplicative) {
  Rng rng(15);
  for (std::size_t n = 1; n <= 3; ++n) {
    auto family = term_order_family(n, rng);
    std::size_t perms = n == 1 ? 1 : n == 2 ? 2 : 6;
    EXPECT_EQ(family.size(), 3 * perms);
    auto monos = box(Exponents(n, 3));
    for (const auto& ord : family) {
      for (const auto& a : monos) {
        EXPECT_FALSE(ord.less(a, a));
        for (const auto& b : monos) {
          if (a == b) continue;
          EXPECT_NE(ord.less(a, b), ord.less(b, a));
          Exponents c(n, 1), ac = a, bc = b;
          for (std::size_t i = 0; i < n; ++i) {
            ac[i] += c[i];
            bc[i] += c[i];
          }
          EXPECT_EQ(ord.less(a, b), ord.less(ac, bc));
        }
        if (total_degree(a) > 0) {
          EXPECT_TRUE(ord.less(Exponents(n, 0), a));
        }
      }
    }
  }
}

TEST(TermOrder, LeadingMonomialOfProductIsSum) {
  Rng rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    auto spec = trial % 2 ? Q : random_prime_field(rng);
    std::size_t n = uniform(rng, 1, 3);
    auto f = random_poly(spec, n, 4, 4, rng);
    auto g = random_poly(spec, n, 4, 4, rng);
    if (f.is_zero() || g.is_zero()) continue;
    for (const auto& ord : term_order_family(n, rng)) {
      auto lf = leading_monomial(f, ord), lg = leading_monomial(g, ord);
      for (std::size_t i = 0; i < n; ++i) lf[i] += lg[i];
      EXPECT_EQ(leading_monomial(f * g, ord), lf);
    }
  }
}

TEST(MultiPoly, CoeffOf) {
  auto f = P("2*x1*x2", 2, Q);
  EXPECT_EQ(coeff_of(f, {1, 1}), FieldElement(Q, 2LL));
  EXPECT_TRUE(coeff_of(f, {2, 0}).is_zero());
}

TEST(Box, EnumeratesInLexOrder) {
  auto b = box({2, 3});
  ASSERT_EQ(b.size(), 6u);
  EXPECT_EQ(b.front(), (Exponents{0, 0}));
  EXPECT_EQ(b[1], (Exponents{0, 1}));
  EXPECT_EQ(b.back(), (Exponents{1, 2}));
  EXPECT_TRUE(std::is_sorted(b.begin(), b.end()));
  EXPECT_TRUE(box({2, 0}).empty());
}
