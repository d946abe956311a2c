#include <gtest/gtest.h>

#include <cmath>

#include "bsingular/endpoint_modifier.hpp"
#include "bsingular/errors.hpp"
#include "bsingular/test_function.hpp"

using namespace bsingular;

namespace {

double quarter(double t) { return std::pow(t, -0.25); }

}  // namespace

TEST(Cutoff, ShapeAndSmoothness) {
  for (int order : {1, 2, 3}) {
    EXPECT_EQ(cutoff_psi(-0.5, order), 1.0);
    EXPECT_EQ(cutoff_psi(0.0, order), 1.0);
    EXPECT_EQ(cutoff_psi(1.0, order), 0.0);
    EXPECT_EQ(cutoff_psi(2.0, order), 0.0);
    double previous = 1.0;
    for (int i = 1; i <= 100; ++i) {
      const double v = cutoff_psi(i / 100.0, order);
      EXPECT_LE(v, previous);
      previous = v;
    }
    for (int j = 1; j <= order; ++j) {
      EXPECT_NEAR(cutoff_psi(1e-9, order, j), 0.0, 1e-6);
      EXPECT_NEAR(cutoff_psi(1.0 - 1e-9, order, j), 0.0, 1e-6);
    }
    const double h = 1e-6, t = 0.3;
    EXPECT_NEAR(cutoff_psi(t, order, 1), (cutoff_psi(t + h, order) - cutoff_psi(t - h, order)) / (2 * h), 1e-6);
  }
}

TEST(Lagrange, Examples) {
  SampledFunction f([](double t) { return std::exp(t); });
  const long n = 20;
  EXPECT_DOUBLE_EQ(lagrange_left(f, n, 1, 0.0), std::exp(1.0 / n));
  EXPECT_DOUBLE_EQ(lagrange_right(f, n, 1, 1.0), std::exp(1.0 - 1.0 / n));
  EXPECT_NEAR(lagrange_left(f, n, 2, 0.0), 2 * std::exp(1.0 / n) - std::exp(2.0 / n), 1e-14);
  EXPECT_NEAR(lagrange_right(f, n, 2, 1.0), 2 * std::exp(1.0 - 1.0 / n) - std::exp(1.0 - 2.0 / n), 1e-14);
  SampledFunction quadratic([](double t) { return 1.0 - 3 * t + 2 * t * t; });
  for (double x : {0.0, 0.05, 0.5, 1.0}) {
    EXPECT_NEAR(lagrange_left(quadratic, n, 3, x), quadratic(x), 1e-11);
    EXPECT_NEAR(lagrange_right(quadratic, n, 3, x), quadratic(x), 1e-11);
  }
}

TEST(ModifiedFunction, UnboundedExampleMatchesOracle) {
  SampledFunction f(quarter);
  const auto F = modified_function(f, 100, 2);
  // 2 * 100^{1/4} - 50^{1/4}
  EXPECT_NEAR(F(0.0), 3.6654073718642643559, 1e-13);
  EXPECT_TRUE(std::isfinite(F(1.0)));
  EXPECT_EQ(F(0.5), f(0.5));
}

TEST(ModifiedFunction, PolynomialBelowOrderIsUnchanged) {
  SampledFunction linear([](double t) { return 2.0 - 5.0 * t; });
  const auto F = modified_function(linear, 40, 2);
  for (int i = 0; i <= 400; ++i) EXPECT_NEAR(F(i / 400.0), linear(i / 400.0), 1e-11);
}

TEST(ModifiedFunction, ZoneIdentityAndSeamContinuity) {
  for (const auto& tf : default_corpus()) {
    const SampledFunction f = tf.sampled(2);
    for (long n : {64L, 256L}) {
      const auto F = modified_function(f, n, 2);
      const double nn = static_cast<double>(n);
      for (int i = 0; i <= 200; ++i) {
        const double x = 2.0 / nn + (1.0 - 4.0 / nn) * i / 200.0;
        EXPECT_EQ(F(x), f(x)) << tf.name() << ' ' << x;
      }
      for (double seam : {1.0 / nn, 2.0 / nn, 1.0 - 2.0 / nn, 1.0 - 1.0 / nn}) {
        for (double eps : {1e-6, 1e-8, 1e-10}) {
          const double jump = std::abs(F(seam - eps) - F(seam + eps));
          EXPECT_LE(jump, (1e3 * eps + 1e-14) * (1.0 + std::abs(F(seam)))) << tf.name() << " seam " << seam;
        }
      }
      EXPECT_TRUE(std::isfinite(F(0.0))) << tf.name();
      EXPECT_TRUE(std::isfinite(F(1.0))) << tf.name();
    }
  }
}

TEST(ModifiedFunction, DerivativeMatchesFiniteDifferencesInBlendZone) {
  const auto tf = lookup_function("t^0.5");
  const auto F = modified_function(tf.sampled(2), 64, 2);
  for (double x : {0.5 / 64, 1.5 / 64, 1.0 - 1.5 / 64, 0.4}) {
    const double h = 1e-5;
    const double fd1 = (F(x + h) - F(x - h)) / (2 * h);
    const double fd2 = (F(x + h) - 2 * F(x) + F(x - h)) / (h * h);
    EXPECT_NEAR(F.derivative(1, x), fd1, 1e-6 * (1 + std::abs(fd1)));
    EXPECT_NEAR(F.derivative(2, x), fd2, 1e-3 * (1 + std::abs(fd2)));
  }
}

TEST(ModifiedFunction, OverlappingZonesRejected) {
  SampledFunction f([](double t) { return t; });
  EXPECT_THROW(modified_function(f, 4, 2), DomainError);
  EXPECT_NO_THROW(modified_function(f, 5, 2));
}

TEST(Bstar, Examples) {
  SampledFunction one([](double) { return 1.0; });
  SampledFunction id([](double t) { return t; });
  const auto s64 = CombinationScheme::make(64, 2);
  EXPECT_NEAR(bstar_apply(s64, one, 2, 0.37), 1.0, 1e-13);
  EXPECT_NEAR(bstar_apply(s64, id, 2, 0.5), 0.5, 1e-10);
  EXPECT_NEAR(bstar_derivative(s64, id, 2, 1, 0.3), 1.0, 1e-10);
  EXPECT_NEAR(bstar_derivative(s64, id, 2, 2, 0.3), 0.0, 1e-9 * 64 * 64);
}

TEST(Bstar, UnboundedFunctionMatchesBruteForceNodeSum) {
  // Independent F_n node values: nodes k/64 with the two-node extrapolant and smoothstep blend.
  const long n = 64;
  const auto f = [](double t) { return std::pow(t, -0.25); };
  const auto psi = [](double t) {
    if (t <= 0) return 1.0;
    if (t >= 1) return 0.0;
    return 1.0 - t * t * t * (10 - 15 * t + 6 * t * t);
  };
  const auto L = [&](double x) { return f(1.0 / n) + (f(2.0 / n) - f(1.0 / n)) * (n * x - 1.0); };
  const auto R = [&](double x) { return f(1.0 - 1.0 / n) + (f(1.0 - 2.0 / n) - f(1.0 - 1.0 / n)) * (n * (1.0 - x) - 1.0); };
  const auto F = [&](double x) {
    if (x <= 1.0 / n) return L(x);
    if (x >= 1.0 - 1.0 / n) return R(x);
    if (x < 2.0 / n) return f(x) + psi(n * x - 1.0) * (L(x) - f(x));
    if (x > 1.0 - 2.0 / n) return f(x) + psi(n * (1.0 - x) - 1.0) * (R(x) - f(x));
    return f(x);
  };
  const double x = 0.5;
  double brute = 0.0;
  for (long k = 0; k <= n; ++k) brute += F(static_cast<double>(k) / n) * std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) * std::pow(x, k) * std::pow(1 - x, n - k);
  SampledFunction sf(f);
  EXPECT_NEAR(bstar_apply(CombinationScheme::make(n, 1), sf, 2, x), brute, 1e-12 * std::abs(brute));
}

TEST(Bstar, SecondDerivativeMatchesFiniteDifference) {
  SampledFunction f([](double t) { return std::sqrt(t); });
  const auto s = CombinationScheme::make(128, 1);
  const double x = 0.25, h = 1e-4;
  const double fd = (bstar_apply(s, f, 2, x + h) - 2 * bstar_apply(s, f, 2, x) + bstar_apply(s, f, 2, x - h)) / (h * h);
  const double d = bstar_derivative(s, f, 2, 2, x);
  EXPECT_NEAR(d, fd, 1e-3 * std::abs(d));
}

TEST(Bstar, PolynomialTransparency) {
  SampledFunction linear([](double t) { return 0.25 + 3.0 * t; });
  const auto s = CombinationScheme::make(32, 3);
  for (int i = 0; i <= 50; ++i) {
    const double x = i / 50.0;
    EXPECT_NEAR(bstar_apply(s, linear, 2, x), combo_apply(s, linear, x), 1e-10);
  }
}
