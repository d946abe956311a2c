#pragma once

#include <cmath>
#include <concepts>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsingular/errors.hpp"

namespace bsingular {

/// A real function on (0, 1) with optional endpoint limits and derivatives.
///
/// The evaluator only has to be meaningful on the open interval. Sampling
/// at 0 or 1 goes through at(): a declared limit wins, otherwise the
/// evaluator is tried and a non-finite result is reported as a
/// ConfigurationError (the function is singular there and nobody said what
/// value to use).
template <std::floating_point Scalar>
class BasicSampledFunction {
 public:
  using Evaluator = std::function<Scalar(Scalar)>;

  BasicSampledFunction() = default;
  explicit BasicSampledFunction(Evaluator evaluator) : evaluator_(std::move(evaluator)) {}

  BasicSampledFunction& with_left_limit(Scalar value) {
    left_limit_ = value;
    return *this;
  }
  BasicSampledFunction& with_right_limit(Scalar value) {
    right_limit_ = value;
    return *this;
  }
  /// derivatives[j] evaluates the (j+1)-th derivative.
  BasicSampledFunction& with_derivatives(std::vector<Evaluator> derivatives) {
    derivatives_ = std::move(derivatives);
    return *this;
  }

  Scalar operator()(Scalar x) const { return evaluator_(x); }

  Scalar at(Scalar x) const {
    if (x == Scalar(0)) return endpoint(left_limit_, x, "0");
    if (x == Scalar(1)) return endpoint(right_limit_, x, "1");
    return evaluator_(x);
  }

  const std::optional<Scalar>& left_limit() const { return left_limit_; }
  const std::optional<Scalar>& right_limit() const { return right_limit_; }

  int derivative_order() const { return static_cast<int>(derivatives_.size()); }

  /// order 0 is the function itself.
  Scalar derivative(int order, Scalar x) const {
    if (order == 0) return evaluator_(x);
    if (order < 0 || order > derivative_order())
      throw ConfigurationError("derivative of order " + std::to_string(order) +
                               " requested but only " + std::to_string(derivative_order()) +
                               " supplied");
    return derivatives_[static_cast<std::size_t>(order - 1)](x);
  }

  explicit operator bool() const { return static_cast<bool>(evaluator_); }

 private:
  Scalar endpoint(const std::optional<Scalar>& limit, Scalar x, const char* where) const {
    if (limit) return *limit;
    const Scalar value = evaluator_(x);
    if (!std::isfinite(value))
      throw ConfigurationError(std::string("function is singular at ") + where +
                               " and has no declared endpoint limit");
    return value;
  }

  Evaluator evaluator_;
  std::optional<Scalar> left_limit_;
  std::optional<Scalar> right_limit_;
  std::vector<Evaluator> derivatives_;
};

using SampledFunction = BasicSampledFunction<double>;

}  // namespace bsingular
