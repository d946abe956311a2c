#include <gtest/gtest.h>

#include <cmath>

#include "bsingular/bernstein.hpp"
#include "bsingular/errors.hpp"
#include "bsingular/sampled_function.hpp"

using namespace bsingular;

namespace {

SampledFunction poly(double a, double b, double c = 0.0) {
  return SampledFunction([=](double t) { return a + b * t + c * t * t; });
}

}  // namespace

TEST(Basis, SmallCases) {
  EXPECT_EQ(basis(2, 1, 0.5), 0.5);
  EXPECT_EQ(basis(10, 0, 0.0), 1.0);
  EXPECT_EQ(basis(10, 3, 0.0), 0.0);
  EXPECT_EQ(basis(10, 10, 1.0), 1.0);
}

TEST(Basis, MatchesHighPrecisionOracle) {
  // 120 * 0.3^3 * 0.7^7, from tests/oracles/derive_values.py
  EXPECT_NEAR(basis(10, 3, 0.3), 0.2668279320, 1e-10);
  EXPECT_NEAR(basis(10, 3, 0.3) / 0.26682793200000004, 1.0, 1e-14);
}

TEST(Basis, SaddlePointBranchAgreesWithDirectProduct) {
  // n = 40 leaves the exact small-degree branch; compare against lgamma form.
  for (long k : {1L, 7L, 20L, 39L}) {
    const double x = 0.37;
    const double direct = std::exp(std::lgamma(41.0) - std::lgamma(k + 1.0) - std::lgamma(41.0 - k) + k * std::log(x) +
                                   (40 - k) * std::log1p(-x));
    EXPECT_NEAR(basis(40, k, x) / direct, 1.0, 1e-12) << k;
  }
}

TEST(Basis, RowMatchesPointwiseAndIsNonNegative) {
  for (long n : {1L, 5L, 33L, 257L, 2048L}) {
    for (double x : {1e-9, 0.013, 0.5, 0.77, 1.0 - 1e-9}) {
      const auto row = basis_row(n, x);
      for (long k = 0; k <= n; ++k) {
        EXPECT_GE(row[k], 0.0);
        const double p = basis(n, k, x);
        EXPECT_NEAR(row[k], p, 1e-13 + 1e-11 * p) << n << ' ' << k << ' ' << x;
      }
    }
  }
}

TEST(Basis, ExtremeIndicesStayAccurate) {
  const long n = 2000;
  const double x = 0.999;
  EXPECT_NEAR(basis(n, n, x) / std::exp(n * std::log(x)), 1.0, 1e-13);
  EXPECT_NEAR(basis(n, 0, 1e-5) / std::exp(n * std::log1p(-1e-5)), 1.0, 1e-13);
}

TEST(Basis, DomainErrors) {
  EXPECT_THROW(basis(-1, 0, 0.5), DomainError);
  EXPECT_THROW(basis(4, 5, 0.5), DomainError);
  EXPECT_THROW(basis(4, -1, 0.5), DomainError);
  EXPECT_THROW(basis(4, 1, 1.5), DomainError);
  EXPECT_THROW(basis(4, 1, std::nan("")), DomainError);
}

TEST(BernsteinApply, Examples) {
  EXPECT_NEAR(bernstein_apply(poly(1, 0), 17, 0.42), 1.0, 1e-14);
  EXPECT_NEAR(bernstein_apply(poly(0, 1), 50, 0.3), 0.3, 1e-15);
  EXPECT_NEAR(bernstein_apply(poly(0, 0, 1), 10, 0.3), 0.111, 1e-15);
}

TEST(BernsteinApply, LinearReproductionAndEndpointInterpolation) {
  const double a = -2.5, b = 7.25;
  for (long n : {1L, 3L, 64L, 1000L})
    for (int i = 0; i <= 50; ++i) {
      const double x = i / 50.0;
      EXPECT_NEAR(bernstein_apply(poly(a, b), n, x), a + b * x, 1e-10 * (std::abs(a) + std::abs(b)));
    }
  SampledFunction root([](double t) { return std::sqrt(t); });
  EXPECT_EQ(bernstein_apply(root, 30, 0.0), 0.0);
  EXPECT_EQ(bernstein_apply(root, 30, 1.0), 1.0);
}

TEST(BernsteinApply, SingularEndpointWithoutLimitIsConfigurationError) {
  SampledFunction f([](double t) { return std::pow(t, -0.25); });
  EXPECT_THROW(bernstein_apply(f, 10, 0.5), ConfigurationError);
  f.with_left_limit(0.0);
  EXPECT_NO_THROW(bernstein_apply(f, 10, 0.5));
}

TEST(BernsteinDerivative, Examples) {
  EXPECT_NEAR(bernstein_derivative(poly(0, 1), 20, 1, 0.7), 1.0, 1e-13);
  for (double x : {0.0, 0.2, 0.9, 1.0}) EXPECT_NEAR(bernstein_derivative(poly(0, 0, 1), 10, 2, x), 1.8, 1e-13);
  EXPECT_NEAR(bernstein_derivative(poly(1, 0), 10, 1, 0.5), 0.0, 1e-15);
  EXPECT_THROW(bernstein_derivative(poly(0, 1), 3, 4, 0.5), DomainError);
}

TEST(BernsteinDerivative, ConsistentWithApplyAndFiniteDifferences) {
  SampledFunction f([](double t) { return std::exp(std::sin(3 * t)); });
  const long n = 40;
  for (double x : {0.1, 0.45, 0.8}) {
    EXPECT_NEAR(bernstein_derivative(f, n, 0, x), bernstein_apply(f, n, x), 1e-13);
    const double h = 1e-6;
    const double fd = (bernstein_apply(f, n, x + h) - bernstein_apply(f, n, x - h)) / (2 * h);
    const double d = bernstein_derivative(f, n, 1, x);
    EXPECT_NEAR(d, fd, 1e-5 * std::abs(d));
  }
}

TEST(Moments, Examples) {
  EXPECT_NEAR(central_moment(100, 0, 0.25), 1.0, 1e-14);
  EXPECT_NEAR(central_moment(100, 1, 0.25), 0.0, 1e-14);
  // x(1-x)/n, confirmed by the rational node sum in tests/oracles/derive_values.py
  EXPECT_NEAR(central_moment(10, 2, 0.3), 0.021, 1e-15);
}

TEST(Moments, OddCentralMomentsVanishAtMidpoint) {
  for (long n : {7L, 64L, 513L})
    for (int j : {1, 3, 5}) EXPECT_NEAR(central_moment(n, j, 0.5), 0.0, 1e-13);
}

TEST(Moments, AbsoluteSecondMomentEqualsVariance) {
  EXPECT_NEAR(absolute_moment(10, 2.0, 0.3), 10 * 0.3 * 0.7, 1e-13);
  EXPECT_NEAR(absolute_moment(10, 0.0, 0.3), 1.0, 1e-14);
}
