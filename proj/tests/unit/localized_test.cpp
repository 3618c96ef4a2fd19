#include <gtest/gtest.h>

#include <random>

#include "melin/error.hpp"
#include "melin/localized.hpp"
#include "melin/moyal.hpp"
#include "unit/test_support.hpp"

namespace melin {
namespace {

using testing::max_abs_diff;
using testing::mono;
using testing::one_;
using testing::oscillator;
using testing::random_homogeneous;
using testing::random_polynomial;

GradedSymbol quartic(double c, bool sextic = true) {
  const PolynomialSymbol h = oscillator();
  GradedSymbol p(1, HalfInteger{}, 2);
  PolynomialSymbol top = h * h;
  if (sextic) top += mono({6, 0});
  p.add_level(0, top);
  PolynomialSymbol sub = h;
  sub *= c;
  p.add_level(1, sub);
  return p;
}

TEST(LocalizedSymbol, QuadraticModel) {
  GradedSymbol p(1, HalfInteger{}, 1);
  PolynomialSymbol q0 = mono({2, 0}) + mono({1, 1}, 0.5) + mono({0, 2}, 2.0);
  p.add_level(0, q0 + mono({3, 0}));
  p.add_level(1, one_() * 0.3 + mono({1, 0}));
  const PolynomialSymbol loc = localized_symbol(p);
  EXPECT_EQ(loc, q0 + one_() * 0.3);
}

TEST(LocalizedSymbol, HigherDegreeTermsDropOut) {
  const PolynomialSymbol loc = localized_symbol(quartic(1.0));
  const PolynomialSymbol h = oscillator();
  EXPECT_EQ(loc, h * h + h);
  EXPECT_EQ(loc.coefficient(MultiIndex({6, 0})), Complex(0.0));
}

TEST(LocalizedSymbol, VanishingViolation) {
  GradedSymbol p(1, HalfInteger{}, 2);
  p.add_level(0, oscillator());
  EXPECT_THROW(localized_symbol(p), VanishingOrderViolation);
}

TEST(Localize, QuarticSpectrum) {
  // Op((y^2+eta^2)^2 + c (y^2+eta^2)) has eigenvalues (2n+1)^2 + 1 + c (2n+1)
  for (double c : {1.0, -1.0, -3.0, 0.0}) {
    const LocalizedOperator op = localize(quartic(c), {16, 32, 64});
    double expect = 1e300;
    for (int n = 0; n < 10; ++n) expect = std::min(expect, (2.0 * n + 1) * (2 * n + 1) + 1 + c * (2 * n + 1));
    EXPECT_NEAR(op.lambda_min, expect, 1e-10) << c;
    EXPECT_EQ(op.k, 2);
  }
}

TEST(Localize, KOneMatchesMelinQuantity) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int trial = 0; trial < 5; ++trial) {
    GradedSymbol p(1, HalfInteger{}, 1);
    const double b = u(rng), s = u(rng);
    p.add_level(0, mono({2, 0}, 1.0 + trial * 0.1) + mono({1, 1}, 2 * b) + mono({0, 2}, 1.2));
    p.add_level(1, one_() * s);
    const LocalizedOperator op = localize(p, {32, 64});
    EXPECT_NEAR(op.lambda_min, melin_quantity(quadratic_data(p)), 1e-6);
  }
}

TEST(Localize, LinearInTheSymbol) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 5; ++trial) {
    GradedSymbol p(1, HalfInteger{}, 2), q(1, HalfInteger{}, 2), sum(1, HalfInteger{}, 2);
    for (int j = 0; j <= 2; ++j) {
      const PolynomialSymbol a = random_polynomial(rng, 1, 5, true, 0.6, 4 - 2 * j);
      const PolynomialSymbol b = random_polynomial(rng, 1, 5, true, 0.6, 4 - 2 * j);
      p.add_level(j, a);
      q.add_level(j, b);
      PolynomialSymbol c = a;
      c *= 2.0;
      sum.add_level(j, c - b);
    }
    PolynomialSymbol expect = localized_symbol(p);
    expect *= 2.0;
    expect -= localized_symbol(q);
    EXPECT_LT(max_coefficient_distance(localized_symbol(sum), expect), 1e-14);
  }
}

TEST(Localize, IdempotentOnLocalizedSymbols) {
  std::mt19937_64 rng(23);
  GradedSymbol p(2, HalfInteger{}, 2);
  for (int j = 0; j <= 2; ++j) p.add_level(j, random_polynomial(rng, 2, 5, true, 0.5, 4 - 2 * j));
  const PolynomialSymbol loc = localized_symbol(p);
  GradedSymbol again(2, HalfInteger{}, 2);
  for (int j = 0; j <= 2; ++j) again.add_level(j, loc.homogeneous_part(4 - 2 * j));
  EXPECT_EQ(localized_symbol(again), loc);
}

TEST(HypothesisCheck, Outcomes) {
  const Diagnosis good = hypothesis_check(quartic(1.0));
  EXPECT_TRUE(good.overall);
  EXPECT_TRUE(good.ellipticity.ok);
  EXPECT_TRUE(good.positivity.ok);
  EXPECT_NEAR(good.positivity.lambda_min, 3.0, 1e-8);

  const Diagnosis below = hypothesis_check(quartic(-3.0));
  EXPECT_TRUE(below.ellipticity.ok);
  EXPECT_FALSE(below.positivity.ok);
  EXPECT_FALSE(below.overall);
  EXPECT_NEAR(below.positivity.lambda_min, -1.0, 1e-8);

  GradedSymbol y4(1, HalfInteger{}, 2);
  y4.add_level(0, mono({4, 0}));
  const Diagnosis degenerate = hypothesis_check(y4);
  EXPECT_FALSE(degenerate.ellipticity.ok);
  EXPECT_NEAR(degenerate.ellipticity.min_value, 0.0, 1e-12);
  EXPECT_FALSE(degenerate.overall);

  GradedSymbol low(1, HalfInteger{}, 2);
  low.add_level(0, oscillator());
  const Diagnosis vanishing = hypothesis_check(low);
  EXPECT_FALSE(vanishing.vanishing_ok);
  EXPECT_FALSE(vanishing.positivity.evaluated);
  EXPECT_FALSE(vanishing.overall);
}

TEST(SphereSamples, UnitNorm) {
  for (int dim : {1, 2}) {
    const auto pts = sphere_samples(dim);
    EXPECT_EQ(pts.size(), dim == 1 ? 360u : 26u * 20u * 20u);
    for (const auto& p : pts) {
      double n = 0.0;
      for (double v : p) n += v * v;
      EXPECT_NEAR(n, 1.0, 1e-12);
    }
  }
}

TEST(GradedCompose, FoldsToTheScaledStarProduct) {
  std::mt19937_64 rng(24);
  GradedSymbol p(1, HalfInteger::from_int(0), 1), q(1, HalfInteger::from_int(0), 1);
  p.add_level(0, random_homogeneous(rng, 1, 2));
  p.add_level(1, random_polynomial(rng, 1, 1));
  q.add_level(0, random_homogeneous(rng, 1, 2));
  q.add_level(1, one_() * 0.5);
  const GradedSymbol pq = graded_compose(p, q);
  EXPECT_EQ(pq.k(), 2);
  for (double lambda : {1.0, 4.0, 64.0}) {
    const PolynomialSymbol lhs = pq.fold(lambda);
    const PolynomialSymbol rhs = moyal_star(p.fold(lambda), q.fold(lambda), 1.0 / lambda);
    EXPECT_LT(max_coefficient_distance(lhs, rhs), 1e-10 * lambda * lambda);
  }
}

GradedSymbol random_graded(std::mt19937_64& rng, int k) {
  GradedSymbol p(1, HalfInteger{}, k);
  for (int j = 0; j <= k; ++j) p.add_level(j, random_polynomial(rng, 1, 2 * k - 2 * j + 1, true, 0.6, 2 * k - 2 * j));
  return p;
}

TEST(LocalizationProduct, Examples) {
  GradedSymbol h(1, HalfInteger{}, 1);
  h.add_level(0, oscillator());
  EXPECT_LT(localization_product_check(h, h, 16.0, 16), 1e-10);
  EXPECT_LT(localization_product_check(quartic(1.0), h, 16.0, 16), 1e-8);
}

TEST(LocalizationProduct, RandomPairs) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 50; ++trial) {
    const GradedSymbol p = random_graded(rng, 1 + trial % 2);
    const GradedSymbol q = random_graded(rng, 1);
    EXPECT_LT(localization_product_check(p, q, 8.0, 12), 1e-8) << trial;
  }
}

TEST(QuadraticData, FromGradedSymbol) {
  GradedSymbol p(1, HalfInteger{}, 1);
  p.add_level(0, mono({2, 0}) + mono({1, 1}, 0.5) + mono({0, 2}, 2.0));
  p.add_level(1, one_() * 0.3);
  const QuadraticData q = quadratic_data(p);
  EXPECT_DOUBLE_EQ(q.hessian(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(q.hessian(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(q.hessian(1, 1), 4.0);
  EXPECT_DOUBLE_EQ(q.subprincipal, 0.3);
}

}  // namespace
}  // namespace melin
