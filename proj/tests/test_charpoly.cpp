#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace treele;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

Poly poly_of(const std::vector<Integer>& c) { return Poly(c); }

}  // namespace

TEST(Poly, Arithmetic) {
  Poly a{1, 2};      // 1 + 2x
  Poly b{-1, 0, 1};  // x^2 - 1
  EXPECT_EQ(a + b, (Poly{0, 2, 1}));
  EXPECT_EQ(a - a, Poly());
  EXPECT_EQ(a * b, (Poly{-1, -2, 1, 2}));
  EXPECT_EQ(pow(Poly{1, 1}, 3), (Poly{1, 3, 3, 1}));
  EXPECT_EQ(b.derivative(), (Poly{0, 2}));
  EXPECT_EQ(b.degree(), 2);
  EXPECT_TRUE(Poly().is_zero());
  EXPECT_EQ(Poly().degree(), -1);
  EXPECT_EQ(b.eval(Rational(1, 2)), Rational(-3, 4));
  EXPECT_EQ(eval_poly(b, Rational(3)), Rational(8));
  EXPECT_EQ(Poly::linear(4), (Poly{-4, 1}));
  EXPECT_EQ((Poly{0, -4, 9, -6, 1}).to_string(), "x^4 - 6x^3 + 9x^2 - 4x");
}

TEST(Poly, GcdAndSquarefree) {
  Poly p = pow(Poly::linear(1), 3) * pow(Poly::linear(2), 2) * Poly::linear(5);
  EXPECT_EQ(gcd(p, p.derivative()), pow(Poly::linear(1), 2) * Poly::linear(2));
  EXPECT_EQ(squarefree_part(p), Poly::linear(1) * Poly::linear(2) * Poly::linear(5));
  auto parts = squarefree_decomposition(p);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0], Poly::linear(5));
  EXPECT_EQ(parts[1], Poly::linear(2));
  EXPECT_EQ(parts[2], Poly::linear(1));
  EXPECT_EQ(exact_quotient(p, Poly::linear(5)), pow(Poly::linear(1), 3) * pow(Poly::linear(2), 2));
}

TEST(Sturm, Examples) {
  EXPECT_EQ(sign_changes_sturm(Poly{1, -3, 1}, Rational(0), Rational(1)), 1u);
  Poly p4 = exact_quotient(char_poly(path(4)), Poly{0, 1});
  EXPECT_EQ(sign_changes_sturm(p4, Rational(0), Rational(4)), 3u);
  // Roots on the endpoints: (lo, hi] excludes lo and includes hi.
  Poly q = Poly::linear(1) * Poly::linear(3);
  EXPECT_EQ(sign_changes_sturm(q, Rational(1), Rational(3)), 1u);
  EXPECT_EQ(sign_changes_sturm(q, Rational(0), Rational(1)), 1u);
  // Distinct roots only; root_count includes multiplicity.
  Poly r = pow(Poly::linear(1), 3) * Poly::linear(2);
  EXPECT_EQ(sign_changes_sturm(r, Rational(0), Rational(5)), 2u);
  EXPECT_EQ(root_count(r, Rational(0), Rational(5)), 4u);
  EXPECT_THROW(sign_changes_sturm(q, Rational(2), Rational(1)), Error);
  EXPECT_THROW(sign_changes_sturm(Poly(), Rational(0), Rational(1)), Error);
}

TEST(CharPoly, Examples) {
  EXPECT_EQ(char_poly(path(2)), (Poly{0, -2, 1}));
  EXPECT_EQ(char_poly(star(4)), (Poly{0, -4, 9, -6, 1}));
  EXPECT_EQ(char_poly(t4_spider(1, 1)), (Poly{0, 1} * Poly{1, -3, 1} * Poly{5, -5, 1}));
  EXPECT_EQ(char_poly(path(1)), (Poly{0, 1}));
}

TEST(CharPoly, MatchesDeterminantOracleExhaustively) {
  for (std::size_t n = 1; n <= 9; ++n)
    for_each_free_tree(n, [&](const Tree& t) {
      Poly p = char_poly(t);
      ASSERT_EQ(p.coefficients(), oracle::char_poly(t)) << to_edge_list_text(t);
      EXPECT_EQ(p.degree(), static_cast<int>(n));
      EXPECT_EQ(p.leading(), 1);
      EXPECT_EQ(p.coeff(0), 0);
      for (std::size_t i = 0; i <= n; ++i) EXPECT_GE(sgn(p.coeff(i)) * ((n - i) % 2 ? -1 : 1), 0);
    });
}

TEST(CharPoly, RootIndependent) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 30; ++i) {
    Tree t = oracle::random_tree(rng, static_cast<int>(oracle::pick(rng, 2, 25)));
    const auto root = static_cast<Vertex>(rng() % t.size());
    EXPECT_EQ(vertex_functions(t, 0)[0].numerator, vertex_functions(t, root)[root].numerator);
  }
}

TEST(CharPoly, ProductOfVertexFunctionsTelescopes) {
  // prod N_v / prod D_v == N_root, checked by cross multiplication.
  for (std::size_t n = 1; n <= 7; ++n)
    for_each_free_tree(n, [&](const Tree& t) {
      auto fn = vertex_functions(t, 0);
      Poly num = Poly::constant(1), den = Poly::constant(1);
      for (const auto& f : fn) {
        EXPECT_FALSE(f.denominator.is_zero());
        num *= f.numerator;
        den *= f.denominator;
      }
      EXPECT_EQ(num, fn[0].numerator * den);
    });
}

TEST(CharPoly, LeafFunctionIsLambdaMinusOne) {
  auto fn = vertex_functions(star(5), 0);
  for (Vertex v = 1; v < 5; ++v) {
    EXPECT_EQ(fn[v].numerator, Poly::linear(1));
    EXPECT_EQ(fn[v].denominator, Poly::constant(1));
  }
}

TEST(CharPoly, ForestIsProductOfComponents) {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 50; ++i) {
    Tree t = oracle::random_tree(rng, static_cast<int>(oracle::pick(rng, 2, 20)));
    auto split = delete_edge(t, t.edges()[rng() % t.edges().size()]);
    Poly forest = char_poly(std::vector<Tree>{split.first, split.second});
    EXPECT_EQ(forest, char_poly(split.first) * char_poly(split.second));
    // Dense oracle applied to each component.
    const Poly dense = poly_of(oracle::char_poly(split.first)) * poly_of(oracle::char_poly(split.second));
    EXPECT_EQ(forest, dense);
  }
}

TEST(CharPoly, SturmAgreesWithInertia) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 100; ++i) {
    Tree t = oracle::random_tree(rng, static_cast<int>(oracle::pick(rng, 2, 30)));
    Poly p = char_poly(t);
    InertiaCounter counter(t);
    for (int k = 0; k < 20; ++k) {
      const long den = static_cast<long>(oracle::pick(rng, 1, 16));
      Rational x(static_cast<long>(rng() % (t.size() * den + 1)), den);
      x.canonicalize();
      EigenCounts c = counter.count(x);
      // Eigenvalues in (-1, x] with multiplicity = below + equal.
      EXPECT_EQ(root_count(p, Rational(-1), x), c.below + c.equal);
    }
  }
}

TEST(ClosedForms, SpiderExamples) {
  EXPECT_EQ(closed_form_t4(1, 1), (Poly{0, 1} * Poly{1, -3, 1} * Poly{5, -5, 1}));
  EXPECT_EQ(closed_form_t4(2, 1), (Poly{0, 1} * pow(Poly{1, -3, 1}, 2) * Poly{7, -6, 1}));
  EXPECT_THROW(closed_form_t4(1, 0), Error);
}

TEST(ClosedForms, QuarticFactor) {
  for (long r = 2; r <= 8; ++r)
    for (long s1 = 2; s1 <= 8; ++s1) {
      Poly q = tprime_quartic(r, s1);
      EXPECT_EQ(q.eval(Rational(0)), Rational(s1 + 2 * r));
      EXPECT_EQ(q.eval(Rational(1)), Rational(-s1 * (r - 1)));
      EXPECT_EQ(q.eval(Rational(2)), Rational(s1));
    }
  EXPECT_THROW(closed_form_tprime(1, 3), Error);
}

TEST(ClosedForms, SexticFactor) {
  Poly g = tdprime_sextic(3, 2, 2);
  EXPECT_EQ(g.coeff(5), -14);
  EXPECT_EQ(g.coeff(6), 1);
  EXPECT_EQ(g.coeff(0), 2 + 2 + 6 - 1);
  EXPECT_THROW(closed_form_tdprime(3, 1, 2), Error);
}

TEST(ClosedForms, SexticLinearCoefficientIsNegative) {
  // With +alpha4 the product would not equal the tree's polynomial.
  for (long r = 3; r <= 5; ++r) {
    const long s1 = 3, s2 = 2;
    Poly g = tdprime_sextic(r, s1, s2);
    const long a4 = 2 * r * s1 + 2 * s1 * s2 + 2 * r * s2 + 3 * s1 + 3 * s2 + 9 * r + 1;
    EXPECT_EQ(g.coeff(1), -a4);
    Poly flipped = g + Poly{0, 2 * a4};
    Poly wrong = Poly{0, 1} * pow(Poly::linear(1), static_cast<std::size_t>(s1 + s2 - 2)) *
                 pow(Poly{1, -3, 1}, static_cast<std::size_t>(r - 3)) * flipped;
    EXPECT_NE(wrong, char_poly(t_dprime(r, s1, s2)));
  }
}

TEST(ClosedForms, AgreeWithAlgorithmAndOracle) {
  for (long m = 2; m <= 6; ++m)
    EXPECT_EQ(closed_form_t4(m - 1, 1).coefficients(), oracle::char_poly(t4_spider(m - 1, 1)));
  EXPECT_EQ(closed_form_tprime(3, 2).coefficients(), oracle::char_poly(t_prime(3, 2)));
  EXPECT_EQ(closed_form_tdprime(3, 2, 2).coefficients(), oracle::char_poly(t_dprime(3, 2, 2)));
  EXPECT_EQ(closed_form_tdprime(4, 3, 2), char_poly(t_dprime(4, 3, 2)));
}

TEST(ClosedForms, QuarticRootInUnitInterval) {
  for (long r = 2; r <= 6; ++r)
    for (long s1 = 2; s1 <= 6; ++s1) EXPECT_EQ(sign_changes_sturm(tprime_quartic(r, s1), Rational(0), Rational(1)), 1u);
}

TEST(PolyConstruction, FromIntegers) { EXPECT_EQ(poly_of(ints({0, 0, 1, 0})), (Poly{0, 0, 1})); }
