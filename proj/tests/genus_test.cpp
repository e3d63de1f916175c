#include <gtest/gtest.h>

#include "nielsen/genus.hpp"

using namespace nielsen;

namespace {

// Bernoulli numbers from sum_{k=0}^{m} C(m+1,k) B_k = 0.
std::vector<Rational> bernoulli(std::size_t upto) {
  std::vector<Rational> b(upto + 1);
  b[0] = 1;
  for (std::size_t m = 1; m <= upto; ++m) {
    Rational acc = 0;
    Integer c = 1; // C(m+1, k)
    for (std::size_t k = 0; k < m; ++k) {
      acc += Rational(c) * b[k];
      c = c * (m + 1 - k) / (k + 1);
    }
    b[m] = -acc / Rational(m + 1);
  }
  return b;
}

// x/tanh(x/2) = 2 sum_n B_{2n} x^{2n} / (2n)!
Rational l_tilde_oracle(std::size_t k) {
  if (k % 2) return 0;
  static const auto b = bernoulli(40);
  return 2 * b[k] / factorial(k);
}

GradedPolynomial kappa_poly(unsigned m) { return gens::kappa_class(m); }

SimpleTensor kappas(std::initializer_list<int> idx) {
  SimpleTensor t;
  for (int m : idx) t.push_back(m < 0 ? Monomial{} : Monomial{{gens::kappa(m), 1u}});
  return t;
}

} // namespace

TEST(Series, LTildeAgainstBernoulli) {
  const auto s = l_tilde_series(30);
  for (std::size_t k = 0; k <= 30; ++k) EXPECT_EQ(s[k], l_tilde_oracle(k)) << k;
  EXPECT_EQ(s[0], 2);
  EXPECT_EQ(s[2], Rational(1, 6));
  EXPECT_EQ(s[3], 0);
  EXPECT_EQ(s[4], Rational(-1, 360));
  EXPECT_EQ(l_tilde_series(0)[0], 2);
}

TEST(Series, TimesTanhHalfIsX) {
  for (std::size_t order : {1u, 5u, 20u})
    EXPECT_EQ(l_tilde_series(order) * tanh_half_series(order), FormalPowerSeries::x(order));
}

TEST(Series, ReciprocalNeedsUnit) {
  EXPECT_THROW(FormalPowerSeries::x(4).reciprocal(), Error);
  const auto c = hyperbolic_series(10, 1, 0);
  EXPECT_EQ(c * c.reciprocal(), FormalPowerSeries(std::vector<Rational>{1}, 10));
}

TEST(LTildeRank2, Components) {
  EXPECT_EQ(l_tilde_rank2(0), GradedPolynomial::constant(2));
  EXPECT_EQ(l_tilde_rank2(1), Rational(1, 6) * gens::euler().pow(2));
  EXPECT_EQ(l_tilde_rank2(2), Rational(-1, 360) * gens::euler().pow(4));
}

TEST(FiberIntegration, SurfaceRule) {
  EXPECT_EQ(fiber_integrate_surface(l_tilde_rank2(1)), Rational(1, 6) * kappa_poly(1));
  EXPECT_EQ(fiber_integrate_surface(l_tilde_rank2(2)), Rational(-1, 360) * kappa_poly(3));
  EXPECT_TRUE(fiber_integrate_surface(GradedPolynomial::constant(2)).is_zero());
  EXPECT_EQ(fiber_integrate_surface(gens::euler()), kappa_poly(0));
}

TEST(FiberIntegration, LinearAndLowersDegreeByTwo) {
  const GradedPolynomial e = gens::euler();
  const GradedPolynomial a = Rational(3) * e.pow(3) + Rational(-1, 2) * e.pow(5);
  const GradedPolynomial b = Rational(7, 5) * e.pow(2) + GradedPolynomial::constant(4);
  EXPECT_EQ(fiber_integrate_surface(a + Rational(2) * b),
            fiber_integrate_surface(a) + Rational(2) * fiber_integrate_surface(b));
  for (unsigned p = 1; p < 8; ++p) {
    const auto out = fiber_integrate_surface(e.pow(p));
    EXPECT_EQ(out.degree_of(out.terms().begin()->first), 2 * static_cast<int>(p) - 2);
  }
  EXPECT_THROW(fiber_integrate_surface(gens::p1()), Error);
}

TEST(FiberIntegration, KappaZeroSubstitution) {
  const GradedPolynomial p = Rational(3) * kappa_poly(0) * kappa_poly(1);
  EXPECT_EQ(substitute_kappa0(p, 5), Rational(-24) * kappa_poly(1));
}

TEST(ChernCharacter, RankThreeComponents) {
  EXPECT_EQ(chern_character_component(3, 0), GradedPolynomial::constant(3));
  EXPECT_EQ(chern_character_component(3, 4), gens::p1());
  EXPECT_EQ(chern_character_component(3, 8), Rational(1, 12) * gens::p1().pow(2));
}

TEST(ChernCharacter, MatchesExponentialRoots) {
  // 1 + e^x + e^{-x}: coefficient of x^{2j} is 2/(2j)!, odd powers cancel
  const auto ch = chern_character_real(3, 40);
  for (unsigned d = 0; d <= 40; ++d) {
    const auto c = ch.component(static_cast<int>(d));
    if (d == 0) {
      EXPECT_EQ(c, GradedPolynomial::constant(3));
    } else if (d % 4 != 0) {
      EXPECT_TRUE(c.is_zero()) << d;
    } else {
      const unsigned j = d / 4;
      EXPECT_EQ(c, (Rational(2) / factorial(2 * j)) * gens::p1().pow(j)) << d;
    }
  }
}

TEST(ChernCharacter, RankGuard) {
  EXPECT_THROW(chern_character_real(4, 8), Error);
  EXPECT_EQ(chern_character_real(1, 8), GradedPolynomial::constant(1));
  EXPECT_EQ(chern_character_real(2, 8).component(0), GradedPolynomial::constant(2));
}

TEST(Relations, BO3) {
  const auto r = verify_bo3_relation();
  EXPECT_EQ(r.lhs, gens::p1().pow(2));
  EXPECT_EQ(r.rhs, gens::p1().pow(2));
  EXPECT_TRUE(r.equal);
}

TEST(Relations, EllClasses) {
  EXPECT_EQ(ell_from_ch(1), Rational(2) * gens::p1());
  EXPECT_EQ(ell_from_ch(2), Rational(1, 6) * gens::p1().pow(2));
  EXPECT_EQ(ell_relation_constant(), 24);
  EXPECT_NE(ell_relation_constant(), 12);
}

TEST(Relations, DegreeTwelveReportedOnly) {
  const auto d = degree_twelve_check();
  EXPECT_EQ(d.product, Rational(1, 12) * gens::p1().pow(3));
  EXPECT_EQ(d.ch12, Rational(1, 360) * gens::p1().pow(3));
  EXPECT_EQ(d.ratio, 30);
}

TEST(SurfaceProducts, EllOneOnTwoSurfaces) {
  const TensorClass l1 = ell_product_of_surfaces({18, 2}, 1);
  EXPECT_EQ(l1.terms().size(), 1u);
  EXPECT_EQ(l1.coefficient(kappas({1, 1})), Rational(1, 36));
  // L̃_2 ⊗ L̃_0: the constant slot integrates to zero
  EXPECT_EQ(l1.coefficient(kappas({3, -1})), 0);
}

TEST(SurfaceProducts, EllTwoOnTwoSurfaces) {
  const TensorClass l2 = ell_product_of_surfaces({18, 2}, 2);
  EXPECT_EQ(l2.terms().size(), 2u);
  EXPECT_EQ(l2.coefficient(kappas({1, 3})), Rational(-1, 2160));
  EXPECT_EQ(l2.coefficient(kappas({3, 1})), Rational(-1, 2160));
}

TEST(SurfaceProducts, AgreesWithFullProductExpansion) {
  for (std::size_t surfaces : {2u, 4u})
    for (unsigned i = 1; i <= 4; ++i) {
      const unsigned k = static_cast<unsigned>(surfaces / 2);
      GradedPolynomial slot;
      for (unsigned j = 0; j <= i + k; ++j) slot += fiber_integrate_surface(l_tilde_rank2(j));
      const TensorClass full = TensorClass::external(std::vector<GradedPolynomial>(surfaces, slot));
      TensorClass expected(surfaces);
      for (const auto &[s, c] : full.terms())
        if (base_degree(s) == static_cast<int>(4 * i)) expected.add_term(s, c);
      const TensorClass got = ell_product_of_surfaces(std::vector<int>(surfaces, 20), i);
      EXPECT_EQ(got, expected) << surfaces << " " << i;
      for (const auto &[s, c] : got.terms()) {
        EXPECT_EQ(base_degree(s) + 2 * static_cast<int>(surfaces), static_cast<int>(4 * (i + k)));
        for (const auto &m : s)
          for (const auto &[g, e] : m) EXPECT_EQ(std::stoi(g.substr(6)) % 2, 1) << g;
      }
    }
}

TEST(SurfaceProducts, Errors) {
  try {
    ell_product_of_surfaces({2, 3, 4}, 1);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::OddArity);
  }
  EXPECT_THROW(ell_product_of_surfaces({}, 1), Error);
}

TEST(GradedPolynomial, RingAxiomsOnSamples) {
  const GradedPolynomial a = gens::p1() + GradedPolynomial::constant(Rational(1, 3));
  const GradedPolynomial b = Rational(2) * gens::euler() - gens::p1().pow(2);
  const GradedPolynomial c = gens::kappa_class(1) + GradedPolynomial::constant(-5);
  EXPECT_EQ(a * b, b * a);
  EXPECT_EQ((a * b) * c, a * (b * c));
  EXPECT_EQ(a * (b + c), a * b + a * c);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(to_string(chern_character_real(3, 8)), "3 + p1 + 1/12*p1^2");
}
