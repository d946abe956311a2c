#pragma once

// r-th differences entering the weighted modulus:
//   central   sum_k (-1)^k C(r,k) f(x + (r/2 - k) h phi(x))
//   forward   sum_k (-1)^k C(r,k) f(x + (r - k) h)
//   backward  sum_k (-1)^k C(r,k) f(x - k h)

#include <cmath>
#include <string>

#include "bsingular/errors.hpp"
#include "bsingular/weights.hpp"

namespace bsingular {

namespace detail {

inline double binomial_coefficient(int r, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (r - k + i) / i;
  return c;
}

inline void check_point(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw RangeError("difference reaches " + std::to_string(p) + ", outside [0, 1]");
}

/// Evaluate at a point known to lie in [0, 1]; sampled functions route
/// endpoints through their declared limits.
template <class F>
double sample(const F& f, double p) {
  if constexpr (requires { f.at(p); })
    return f.at(p);
  else
    return f(p);
}

}  // namespace detail

template <class F>
double diff_central(const F& f, double h, const StepWeight& phi, int r, double x) {
  const double step = h * phi(x);
  double sum = 0.0;
  for (int k = 0; k <= r; ++k) {
    const double p = x + (0.5 * r - k) * step;
    detail::check_point(p);
    const double term = detail::binomial_coefficient(r, k) * detail::sample(f, p);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

template <class F>
double diff_forward(const F& f, double h, int r, double x) {
  double sum = 0.0;
  for (int k = 0; k <= r; ++k) {
    const double p = x + (r - k) * h;
    detail::check_point(p);
    const double term = detail::binomial_coefficient(r, k) * detail::sample(f, p);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

template <class F>
double diff_backward(const F& f, double h, int r, double x) {
  double sum = 0.0;
  for (int k = 0; k <= r; ++k) {
    const double p = x - k * h;
    detail::check_point(p);
    const double term = detail::binomial_coefficient(r, k) * detail::sample(f, p);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

}  // namespace bsingular
