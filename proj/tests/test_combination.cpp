#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cmath>

#include "bsingular/combination.hpp"
#include "bsingular/errors.hpp"

using namespace bsingular;

namespace {

SampledFunction power(double p) {
  return SampledFunction([p](double t) { return std::pow(t, p); });
}

}  // namespace

TEST(Scheme, SingleTerm) {
  const auto s = CombinationScheme::make(32, 1);
  ASSERT_EQ(s.term_count(), 1);
  EXPECT_EQ(s.coefficients()[0], 1.0);
}

TEST(Scheme, GeometricCoefficientsAreExact) {
  const auto s2 = CombinationScheme::make(32, 2);
  EXPECT_EQ(s2.degrees(), (std::vector<long>{32, 64}));
  EXPECT_NEAR(s2.coefficients()[0], -1.0, 1e-14);
  EXPECT_NEAR(s2.coefficients()[1], 2.0, 1e-14);
  const auto s3 = CombinationScheme::make(32, 3);
  EXPECT_NEAR(s3.coefficients()[0], 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(s3.coefficients()[1], -2.0, 1e-14);
  EXPECT_NEAR(s3.coefficients()[2], 8.0 / 3.0, 1e-14);
  EXPECT_EQ(s3.exact_coefficients()[0], (ExactFraction{"1", "3"}));
  EXPECT_EQ(s3.exact_coefficients()[2], (ExactFraction{"8", "3"}));
}

TEST(Scheme, ArithmeticLadderMatchesOracle) {
  const auto s = CombinationScheme::make(32, 3, Ladder::arithmetic);
  EXPECT_EQ(s.degrees(), (std::vector<long>{32, 64, 96}));
  EXPECT_NEAR(s.coefficients()[0], 0.5, 1e-14);
  EXPECT_NEAR(s.coefficients()[1], -4.0, 1e-14);
  EXPECT_NEAR(s.coefficients()[2], 4.5, 1e-14);
}

TEST(Scheme, ConditionsHold) {
  for (int m = 1; m <= 6; ++m)
    for (Ladder ladder : {Ladder::geometric, Ladder::arithmetic}) {
      const auto s = CombinationScheme::make(16, m, ladder);
      EXPECT_NEAR(s.coefficients().sum(), 1.0, 1e-12);
      for (int k = 1; k < m; ++k) {
        double sum = 0.0, scale = 0.0;
        for (int i = 0; i < m; ++i) {
          const double term = s.coefficients()[i] * std::pow(static_cast<double>(s.degrees()[i]), -k);
          sum += term;
          scale += std::abs(term);
        }
        EXPECT_LE(std::abs(sum), 1e-12 * scale) << m << ' ' << k;
      }
      EXPECT_LE(s.degrees().back(), s.growth_constant() * s.base_degree());
    }
}

TEST(Scheme, AbsoluteSumIsIndependentOfDegreeForGeometricLadder) {
  const double expected[] = {3.0, 5.0, 45.0 / 7.0};
  for (int m = 2; m <= 4; ++m) {
    const double reference = CombinationScheme::make(16, m).absolute_sum();
    EXPECT_NEAR(reference, expected[m - 2], 1e-12);
    for (long n = 32; n <= 1024; n *= 2) {
      EXPECT_NEAR(CombinationScheme::make(n, m).absolute_sum(), reference, 1e-12);
      EXPECT_EQ(CombinationScheme::make(n, m).exact_coefficients(), CombinationScheme::make(16, m).exact_coefficients());
    }
  }
}

TEST(Scheme, DeterministicAndRoundTrips) {
  const auto a = CombinationScheme::make(48, 5);
  const auto b = CombinationScheme::make(48, 5);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(a.coefficients()[i], b.coefficients()[i]);
  const auto c = CombinationScheme::from_json(a.to_json());
  EXPECT_TRUE(a == c);
  auto j = a.to_json();
  j["exact"][0][0] = "7";
  EXPECT_THROW(CombinationScheme::from_json(j), ConfigurationError);
}

TEST(Scheme, InvalidInputs) {
  EXPECT_THROW(CombinationScheme::make(0, 2), DomainError);
  EXPECT_THROW(CombinationScheme::make(16, 0), DomainError);
  EXPECT_THROW(CombinationScheme::from_degrees({16, 16}), DomainError);
  EXPECT_THROW(ladder_from_string("fibonacci"), ConfigurationError);
}

TEST(ComboApply, Examples) {
  const auto s = CombinationScheme::make(32, 2);
  EXPECT_NEAR(combo_apply(s, power(0.0), 0.6), 1.0, 1e-14);
  EXPECT_NEAR(combo_apply(s, power(1.0), 0.3), 0.3, 1e-14);
  const auto s1020 = CombinationScheme::from_degrees({10, 20});
  EXPECT_NEAR(combo_apply(s1020, power(2.0), 0.3), 0.09, 1e-14);
}

TEST(ComboDerivative, Examples) {
  const auto s = CombinationScheme::make(16, 2);
  EXPECT_NEAR(combo_derivative(s, power(1.0), 1, 0.4), 1.0, 1e-12);
  EXPECT_NEAR(combo_derivative(s, power(0.0), 2, 0.4), 0.0, 1e-12);
  // t^3, third derivative against finite differences of combo_apply
  const double x = 0.5, h = 1e-2;
  const auto g = [&](double y) { return combo_apply(s, power(3.0), y); };
  const double fd = (g(x + 2 * h) - 2 * g(x + h) + 2 * g(x - h) - g(x - 2 * h)) / (2 * h * h * h);
  const double d = combo_derivative(s, power(3.0), 3, x);
  EXPECT_NEAR(d, fd, 1e-4 * std::abs(d));
}

TEST(MomentAnnihilation, Examples) {
  const auto s1020 = CombinationScheme::from_degrees({10, 20});
  const auto r = moment_annihilation(s1020, 2, 0.3);
  EXPECT_NEAR(r[0], 0.0, 1e-14);
  EXPECT_NEAR(r[1], 0.0, 1e-12);
  const auto single = moment_annihilation(CombinationScheme::from_degrees({10}), 2, 0.3);
  EXPECT_NEAR(single[1], 0.021, 1e-14);
}

TEST(MomentAnnihilation, KillsMomentsThroughM) {
  for (int m = 1; m <= 4; ++m)
    for (long n : {16L, 128L}) {
      const auto s = CombinationScheme::make(n, m);
      for (int i = 0; i <= 100; ++i) {
        const auto res = moment_annihilation(s, m, i / 100.0);
        for (int k = 0; k < m; ++k) EXPECT_LE(std::abs(res[k]), 1e-10 / n) << m << ' ' << n << ' ' << k;
      }
    }
}
