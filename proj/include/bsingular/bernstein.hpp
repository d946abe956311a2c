#pragma once

// Bernstein basis p_{n,k}(x) = C(n,k) x^k (1-x)^(n-k), the operator
// B_n(f, x) = sum_k f(k/n) p_{n,k}(x), its derivatives and central moments.
//
// Single basis values use Loader's saddle-point form of the binomial
// probability: log C(n,k) is split into Stirling remainders plus two
// deviance terms, so nothing large is ever subtracted and the relative error
// stays at a few ulps for any n. Whole rows are produced by the two-term
// ratio recurrence from the mode, re-anchored every kAnchorStride steps.

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <numbers>
#include <string>

#include "bsingular/compensated_sum.hpp"
#include "bsingular/errors.hpp"
#include "bsingular/sampled_function.hpp"

namespace bsingular {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

/// log(n!) - [(n + 1/2) log n - n + log sqrt(2 pi)] for integer n >= 1.
template <std::floating_point Scalar>
Scalar stirling_error(long n) {
  static constexpr std::array<double, 16> table = {
      0.0,  // unused
      0.08106146679532725821967026,  0.04134069595540929409382208,
      0.02767792568499833914878929,  0.02079067210376509311152277,
      0.01664469118982119216319487,  0.01387612882307074799874573,
      0.01189670994589177009505572,  0.01041126526197209649747857,
      0.009255462182712732917728637, 0.008330563433362871256469319,
      0.007573675487951840794972024, 0.006942840107209529865664153,
      0.006408994188004207068439631, 0.005951370112758847735624416,
      0.00555473355196280137103869,
  };
  if (n < 16) return static_cast<Scalar>(table[static_cast<std::size_t>(n)]);
  constexpr Scalar s0 = Scalar(1) / 12;
  constexpr Scalar s1 = Scalar(1) / 360;
  constexpr Scalar s2 = Scalar(1) / 1260;
  constexpr Scalar s3 = Scalar(1) / 1680;
  constexpr Scalar s4 = Scalar(1) / 1188;
  const Scalar x = static_cast<Scalar>(n);
  const Scalar xx = x * x;
  if (n > 500) return (s0 - s1 / xx) / x;
  if (n > 80) return (s0 - (s1 - s2 / xx) / xx) / x;
  if (n > 35) return (s0 - (s1 - (s2 - s3 / xx) / xx) / xx) / x;
  return (s0 - (s1 - (s2 - (s3 - s4 / xx) / xx) / xx) / xx) / x;
}

/// Deviance term k log(k / mean) + mean - k, evaluated without cancellation
/// when k is close to mean.
template <std::floating_point Scalar>
Scalar deviance(Scalar k, Scalar mean) {
  const Scalar diff = k - mean;
  if (std::abs(diff) < Scalar(0.1) * (k + mean)) {
    Scalar v = diff / (k + mean);
    Scalar sum = diff * v;
    Scalar term = 2 * k * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      term *= v;
      const Scalar next = sum + term / (2 * j + 1);
      if (next == sum) return next;
      sum = next;
    }
    return sum;
  }
  return k * std::log(k / mean) + mean - k;
}

inline void check_degree(long n) {
  if (n < 0) throw DomainError("Bernstein degree must be non-negative, got " + std::to_string(n));
}

template <std::floating_point Scalar>
void check_abscissa(Scalar x) {
  if (!(x >= Scalar(0) && x <= Scalar(1)))
    throw DomainError("abscissa must lie in [0, 1], got " + std::to_string(static_cast<double>(x)));
}

}  // namespace detail

/// p_{n,k}(x).
template <std::floating_point Scalar>
Scalar basis(long n, long k, Scalar x) {
  detail::check_degree(n);
  if (k < 0 || k > n)
    throw DomainError("basis index " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
  detail::check_abscissa(x);
  if (x == Scalar(0)) return k == 0 ? Scalar(1) : Scalar(0);
  if (x == Scalar(1)) return k == n ? Scalar(1) : Scalar(0);
  if (n <= 32) {
    // binomial coefficient is exact in double here
    Scalar c = 1;
    for (long i = 1; i <= std::min(k, n - k); ++i) c = c * static_cast<Scalar>(n - i + 1) / static_cast<Scalar>(i);
    return c * std::pow(x, static_cast<Scalar>(k)) * std::pow(Scalar(1) - x, static_cast<Scalar>(n - k));
  }
  const Scalar nn = static_cast<Scalar>(n);
  if (k == 0) return std::exp(nn * std::log1p(-x));
  if (k == n) return std::exp(nn * std::log(x));
  const Scalar kk = static_cast<Scalar>(k);
  const Scalar q = Scalar(1) - x;
  const Scalar lc = detail::stirling_error<Scalar>(n) - detail::stirling_error<Scalar>(k) -
                    detail::stirling_error<Scalar>(n - k) - detail::deviance(kk, nn * x) -
                    detail::deviance(nn - kk, nn * q);
  const Scalar lf = std::log(2 * std::numbers::pi_v<Scalar>) + std::log(kk) + std::log1p(-kk / nn);
  return std::exp(lc - Scalar(0.5) * lf);
}

/// All of p_{n,0}(x), ..., p_{n,n}(x).
template <std::floating_point Scalar>
Vector<Scalar> basis_row(long n, Scalar x) {
  constexpr long kAnchorStride = 64;
  detail::check_degree(n);
  detail::check_abscissa(x);
  Vector<Scalar> row = Vector<Scalar>::Zero(n + 1);
  if (x == Scalar(0)) {
    row[0] = 1;
    return row;
  }
  if (x == Scalar(1)) {
    row[n] = 1;
    return row;
  }
  if (n <= 32) {
    for (long k = 0; k <= n; ++k) row[k] = basis(n, k, x);
    return row;
  }
  const Scalar odds = x / (Scalar(1) - x);
  const long mode = std::clamp(static_cast<long>(std::floor(static_cast<Scalar>(n + 1) * x)), 0L, n);
  row[mode] = basis(n, mode, x);
  for (long k = mode; k < n && row[k] != Scalar(0); ++k) {
    if ((k + 1 - mode) % kAnchorStride == 0)
      row[k + 1] = basis(n, k + 1, x);
    else
      row[k + 1] = row[k] * (static_cast<Scalar>(n - k) / static_cast<Scalar>(k + 1)) * odds;
  }
  for (long k = mode; k > 0 && row[k] != Scalar(0); --k) {
    if ((mode - k + 1) % kAnchorStride == 0)
      row[k - 1] = basis(n, k - 1, x);
    else
      row[k - 1] = row[k] * (static_cast<Scalar>(k) / static_cast<Scalar>(n - k + 1)) / odds;
  }
  return row;
}

/// f(0/n), f(1/n), ..., f(n/n); the endpoint nodes go through the declared limits.
template <std::floating_point Scalar>
Vector<Scalar> node_values(const BasicSampledFunction<Scalar>& f, long n) {
  if (n < 1) throw DomainError("Bernstein degree must be positive, got " + std::to_string(n));
  Vector<Scalar> nodes(n + 1);
  const Scalar nn = static_cast<Scalar>(n);
  for (long k = 0; k <= n; ++k) nodes[k] = f.at(static_cast<Scalar>(k) / nn);
  return nodes;
}

/// sum_k nodes[k] p_{n,k}(x) with n = nodes.size() - 1.
template <typename Derived>
typename Derived::Scalar apply_to_nodes(const Eigen::MatrixBase<Derived>& nodes,
                                        typename Derived::Scalar x) {
  using Scalar = typename Derived::Scalar;
  const long n = static_cast<long>(nodes.size()) - 1;
  const Vector<Scalar> row = basis_row(n, x);
  CompensatedSum<Scalar> sum;
  for (long k = 0; k <= n; ++k)
    if (row[k] != Scalar(0)) sum += nodes[k] * row[k];
  return sum.value();
}

/// r-th forward differences of the node sequence (length shrinks by r).
template <typename Derived>
Vector<typename Derived::Scalar> forward_differences(const Eigen::MatrixBase<Derived>& nodes, long r) {
  using Scalar = typename Derived::Scalar;
  Vector<Scalar> diff = nodes;
  for (long step = 0; step < r; ++step) {
    const long len = static_cast<long>(diff.size()) - 1;
    Vector<Scalar> next(len);
    for (long k = 0; k < len; ++k) next[k] = diff[k + 1] - diff[k];
    diff = std::move(next);
  }
  return diff;
}

/// d^r/dx^r of the Bernstein polynomial with the given node values:
/// n!/(n-r)! sum_{k=0}^{n-r} (Delta^r_{1/n} f)(k/n) p_{n-r,k}(x).
template <typename Derived>
typename Derived::Scalar derivative_from_nodes(const Eigen::MatrixBase<Derived>& nodes, long r,
                                               typename Derived::Scalar x) {
  using Scalar = typename Derived::Scalar;
  const long n = static_cast<long>(nodes.size()) - 1;
  if (r < 0 || r > n)
    throw DomainError("derivative order " + std::to_string(r) + " exceeds degree " + std::to_string(n));
  if (r == 0) return apply_to_nodes(nodes, x);
  Scalar falling = 1;
  for (long i = 0; i < r; ++i) falling *= static_cast<Scalar>(n - i);
  return falling * apply_to_nodes(forward_differences(nodes, r), x);
}

/// B_n(f, x).
template <std::floating_point Scalar>
Scalar bernstein_apply(const BasicSampledFunction<Scalar>& f, long n, Scalar x) {
  detail::check_abscissa(x);
  return apply_to_nodes(node_values(f, n), x);
}

/// B_n^{(r)}(f, x).
template <std::floating_point Scalar>
Scalar bernstein_derivative(const BasicSampledFunction<Scalar>& f, long n, long r, Scalar x) {
  if (r > n)
    throw DomainError("derivative order " + std::to_string(r) + " exceeds degree " + std::to_string(n));
  detail::check_abscissa(x);
  return derivative_from_nodes(node_values(f, n), r, x);
}

/// Signed central moment sum_k (x - k/n)^j p_{n,k}(x).
template <std::floating_point Scalar>
Scalar central_moment(long n, int j, Scalar x) {
  if (j < 0) throw DomainError("moment order must be non-negative");
  if (n < 1) throw DomainError("Bernstein degree must be positive");
  const Vector<Scalar> row = basis_row(n, x);
  const Scalar nn = static_cast<Scalar>(n);
  CompensatedSum<Scalar> sum;
  for (long k = 0; k <= n; ++k)
    if (row[k] != Scalar(0)) sum += std::pow(x - static_cast<Scalar>(k) / nn, j) * row[k];
  return sum.value();
}

/// Absolute moment sum_k |k - n x|^gamma p_{n,k}(x) for real gamma.
template <std::floating_point Scalar>
Scalar absolute_moment(long n, Scalar gamma, Scalar x) {
  if (n < 1) throw DomainError("Bernstein degree must be positive");
  const Vector<Scalar> row = basis_row(n, x);
  const Scalar nx = static_cast<Scalar>(n) * x;
  CompensatedSum<Scalar> sum;
  for (long k = 0; k <= n; ++k)
    if (row[k] != Scalar(0)) sum += std::pow(std::abs(static_cast<Scalar>(k) - nx), gamma) * row[k];
  return sum.value();
}

}  // namespace bsingular
