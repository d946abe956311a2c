#include "bsingular/weights.hpp"

#include <algorithm>
#include <cmath>

#include "bsingular/errors.hpp"

namespace bsingular {

namespace {

double endpoint_power(double x, double alpha, double beta) {
  const double left = alpha == 0.0 ? 1.0 : std::pow(x, alpha);
  const double right = beta == 0.0 ? 1.0 : std::pow(1.0 - x, beta);
  return left * right;
}

}  // namespace

JacobiWeight::JacobiWeight(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha >= 0.0) || !(beta >= 0.0))
    throw DomainError("Jacobi weight needs alpha >= 0 and beta >= 0");
  if (!(alpha + beta > 0.0)) throw DomainError("Jacobi weight needs alpha + beta > 0");
}

double JacobiWeight::operator()(double x) const { return endpoint_power(x, alpha_, beta_); }

StepWeight::StepWeight(double beta0, double beta1) : beta0_(beta0), beta1_(beta1) {
  if (!(beta0 >= 0.0) || !(beta1 >= 0.0)) throw DomainError("step-weight exponents must be non-negative");
}

double StepWeight::operator()(double x) const { return endpoint_power(x, beta0_, beta1_); }

double StepWeight::bound_on(double a, double b) const {
  if (!(0.0 < a && a <= b && b < 1.0)) throw DomainError("bound_on needs 0 < a <= b < 1");
  // phi is log-concave: the minimum sits at an end, the maximum at the
  // critical point beta0 / (beta0 + beta1) when that lies inside.
  const double lo = std::min((*this)(a), (*this)(b));
  double hi = std::max((*this)(a), (*this)(b));
  if (beta0_ + beta1_ > 0.0) {
    const double crit = beta0_ / (beta0_ + beta1_);
    if (a < crit && crit < b) hi = std::max(hi, (*this)(crit));
  }
  return std::max(hi, 1.0 / lo);
}

double delta_n(long n, double x) {
  if (n < 1) throw DomainError("delta_n needs n >= 1");
  return std::sqrt(x * (1.0 - x)) + 1.0 / std::sqrt(static_cast<double>(n));
}

double local_scale(long n, const StepWeight& phi, double x) {
  return delta_n(n, x) / (std::sqrt(static_cast<double>(n)) * phi(x));
}

}  // namespace bsingular
