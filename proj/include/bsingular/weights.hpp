#pragma once

#include <cmath>
#include <string>

namespace bsingular {

/// Jacobi weight w(x) = x^alpha (1-x)^beta with alpha, beta >= 0, alpha + beta > 0.
class JacobiWeight {
 public:
  JacobiWeight(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  double operator()(double x) const;

  bool operator==(const JacobiWeight&) const = default;

 private:
  double alpha_;
  double beta_;
};

/// Step-weight phi(x) = x^beta0 (1-x)^beta1. beta0 = beta1 = 1/2 is
/// varphi(x) = sqrt(x(1-x)); beta0 = beta1 = 0 is phi = 1.
class StepWeight {
 public:
  StepWeight(double beta0, double beta1);
  static StepWeight varphi() { return StepWeight(0.5, 0.5); }
  /// varphi^lambda.
  static StepWeight varphi_power(double lambda) { return StepWeight(0.5 * lambda, 0.5 * lambda); }

  double beta0() const { return beta0_; }
  double beta1() const { return beta1_; }
  bool is_varphi() const { return beta0_ == 0.5 && beta1_ == 0.5; }

  double operator()(double x) const;

  /// min{beta0, beta1} >= 1/2, the hypothesis of the direct/inverse theorems.
  bool theorem_admissible() const { return beta0_ >= 0.5 && beta1_ >= 0.5; }

  /// M with M^{-1} <= phi <= M on [a, b], 0 < a <= b < 1.
  double bound_on(double a, double b) const;

  bool operator==(const StepWeight&) const = default;

 private:
  double beta0_;
  double beta1_;
};

/// delta_n(x) = varphi(x) + n^{-1/2}.
double delta_n(long n, double x);

/// n^{-1/2} delta_n(x) / phi(x), the local scale of the direct and inverse estimates.
double local_scale(long n, const StepWeight& phi, double x);

}  // namespace bsingular
