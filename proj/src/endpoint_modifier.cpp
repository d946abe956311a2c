#include "bsingular/endpoint_modifier.hpp"

#include <Eigen/LU>

#include <cmath>
#include <string>

#include "bsingular/bernstein.hpp"
#include "bsingular/errors.hpp"

namespace bsingular {

namespace {

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Monomial coefficients of S(t) = t^{r+1} sum_{j=0}^{r} C(r+j, j) (1-t)^j.
std::vector<double> smoothstep_coefficients(int order) {
  std::vector<double> coeffs(static_cast<std::size_t>(2 * order + 2), 0.0);
  for (int j = 0; j <= order; ++j) {
    const double outer = binomial(order + j, j);
    for (int i = 0; i <= j; ++i) {
      const double inner = binomial(j, i) * ((i % 2 == 0) ? 1.0 : -1.0);
      coeffs[static_cast<std::size_t>(order + 1 + i)] += outer * inner;
    }
  }
  return coeffs;
}

double falling_factorial(int j, int d) {
  double value = 1.0;
  for (int i = 0; i < d; ++i) value *= j - i;
  return value;
}

}  // namespace

double cutoff_psi(double t, int order, int derivative) {
  if (order < 0) throw DomainError("cutoff order must be non-negative");
  if (t <= 0.0) return derivative == 0 ? 1.0 : 0.0;
  if (t >= 1.0) return 0.0;
  const auto coeffs = smoothstep_coefficients(order);
  double value = 0.0;
  for (int j = static_cast<int>(coeffs.size()) - 1; j >= derivative; --j)
    value = value * t + coeffs[static_cast<std::size_t>(j)] * falling_factorial(j, derivative);
  return derivative == 0 ? 1.0 - value : -value;
}

EndpointInterpolant::EndpointInterpolant(const SampledFunction& f, long n, int r, Side side)
    : n_(n), r_(r), side_(side) {
  if (r < 1) throw DomainError("interpolation order must be at least 1");
  if (n <= r) throw DomainError("degree must exceed the number of interpolation nodes");
  const double nn = static_cast<double>(n);
  values_.reserve(static_cast<std::size_t>(r));
  weights_.reserve(static_cast<std::size_t>(r));
  for (int i = 1; i <= r; ++i) {
    const double node = side == Side::left ? i / nn : 1.0 - i / nn;
    values_.push_back(f(node));
    double w = 1.0;
    for (int j = 1; j <= r; ++j)
      if (j != i) w /= static_cast<double>(i - j);
    weights_.push_back(w);
  }
  Eigen::MatrixXd vandermonde(r, r);
  Eigen::VectorXd rhs(r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) vandermonde(i, j) = std::pow(static_cast<double>(i + 1), j);
    rhs[i] = values_[static_cast<std::size_t>(i)];
  }
  monomial_ = vandermonde.fullPivLu().solve(rhs);
}

double EndpointInterpolant::local(double x) const {
  const double nn = static_cast<double>(n_);
  return side_ == Side::left ? nn * x : nn * (1.0 - x);
}

double EndpointInterpolant::operator()(double x) const {
  const double u = local(x);
  double ell = 1.0;
  double sum = 0.0;
  for (int i = 1; i <= r_; ++i) {
    const double d = u - i;
    if (d == 0.0) return values_[static_cast<std::size_t>(i - 1)];
    ell *= d;
    sum += weights_[static_cast<std::size_t>(i - 1)] * values_[static_cast<std::size_t>(i - 1)] / d;
  }
  return ell * sum;
}

double EndpointInterpolant::derivative(int order, double x) const {
  if (order == 0) return (*this)(x);
  if (order >= r_) return 0.0;
  const double u = local(x);
  double value = 0.0;
  for (int j = r_ - 1; j >= order; --j) value = value * u + monomial_[j] * falling_factorial(j, order);
  const double chain = std::pow(static_cast<double>(n_), order);
  const double sign = (side_ == Side::right && order % 2 == 1) ? -1.0 : 1.0;
  return sign * chain * value;
}

double lagrange_left(const SampledFunction& f, long n, int r, double x) {
  return EndpointInterpolant(f, n, r, EndpointInterpolant::Side::left)(x);
}

double lagrange_right(const SampledFunction& f, long n, int r, double x) {
  return EndpointInterpolant(f, n, r, EndpointInterpolant::Side::right)(x);
}

ModifiedFunction::ModifiedFunction(SampledFunction f, long n, int r) {
  if (r < 1) throw DomainError("modification order must be at least 1");
  if (!(2 * r < n))
    throw DomainError("modification zones overlap: need 2r/n < 1, got r = " + std::to_string(r) +
                      ", n = " + std::to_string(n));
  EndpointInterpolant left(f, n, r, EndpointInterpolant::Side::left);
  EndpointInterpolant right(f, n, r, EndpointInterpolant::Side::right);
  state_ = std::make_shared<const State>(State{std::move(f), n, r, std::move(left), std::move(right)});
}

double ModifiedFunction::operator()(double x) const {
  const State& s = *state_;
  const double nn = static_cast<double>(s.n);
  if (x <= 1.0 / nn) return s.left(x);
  if (x >= 1.0 - 1.0 / nn) return s.right(x);
  if (x < 2.0 / nn) {
    const double fx = s.f(x);
    return fx + cutoff_psi(nn * x - 1.0, s.r) * (s.left(x) - fx);
  }
  if (x > 1.0 - 2.0 / nn) {
    const double fx = s.f(x);
    return fx + cutoff_psi(nn * (1.0 - x) - 1.0, s.r) * (s.right(x) - fx);
  }
  return s.f(x);
}

double ModifiedFunction::derivative(int order, double x) const {
  if (order == 0) return (*this)(x);
  const State& s = *state_;
  const double nn = static_cast<double>(s.n);
  if (x <= 1.0 / nn) return s.left.derivative(order, x);
  if (x >= 1.0 - 1.0 / nn) return s.right.derivative(order, x);
  const bool left_blend = x < 2.0 / nn;
  const bool right_blend = x > 1.0 - 2.0 / nn;
  const double fd = s.f.derivative(order, x);
  if (!left_blend && !right_blend) return fd;
  // (f + psi(t(x)) (P - f))^{(d)} with t = n x - 1 or n (1 - x) - 1.
  const EndpointInterpolant& poly = left_blend ? s.left : s.right;
  const double t = left_blend ? nn * x - 1.0 : nn * (1.0 - x) - 1.0;
  const double dt = left_blend ? nn : -nn;
  double sum = fd;
  for (int j = 0; j <= order; ++j) {
    const double psi_j = cutoff_psi(t, s.r, j) * std::pow(dt, j);
    if (psi_j == 0.0) continue;
    const double gap = poly.derivative(order - j, x) - s.f.derivative(order - j, x);
    sum += binomial(order, j) * psi_j * gap;
  }
  return sum;
}

SampledFunction ModifiedFunction::as_sampled() const {
  ModifiedFunction self = *this;
  SampledFunction sampled([self](double x) { return self(x); });
  sampled.with_left_limit(state_->left(0.0)).with_right_limit(state_->right(1.0));
  std::vector<SampledFunction::Evaluator> derivatives;
  for (int d = 1; d <= state_->f.derivative_order(); ++d)
    derivatives.emplace_back([self, d](double x) { return self.derivative(d, x); });
  sampled.with_derivatives(std::move(derivatives));
  return sampled;
}

ModifiedFunction modified_function(const SampledFunction& f, long n, int r) { return ModifiedFunction(f, n, r); }

double bstar_apply(const CombinationScheme& scheme, const SampledFunction& f, int r, double x) {
  const ModifiedFunction fn(f, scheme.base_degree(), r);
  return combo_apply(scheme, fn.as_sampled(), x);
}

double bstar_derivative(const CombinationScheme& scheme, const SampledFunction& f, int r_mod, long r_deriv,
                        double x) {
  const ModifiedFunction fn(f, scheme.base_degree(), r_mod);
  return combo_derivative(scheme, fn.as_sampled(), r_deriv, x);
}

}  // namespace bsingular
