#pragma once

#include <cmath>
#include <concepts>

namespace bsingular {

/// Neumaier's variant of Kahan summation.
template <std::floating_point Scalar>
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  constexpr explicit CompensatedSum(Scalar initial) : sum_(initial) {}

  CompensatedSum& operator+=(Scalar value) {
    const Scalar t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value))
      compensation_ += (sum_ - t) + value;
    else
      compensation_ += (value - t) + sum_;
    sum_ = t;
    return *this;
  }

  CompensatedSum& operator-=(Scalar value) { return *this += -value; }

  Scalar value() const { return sum_ + compensation_; }
  explicit operator Scalar() const { return value(); }

 private:
  Scalar sum_{0};
  Scalar compensation_{0};
};

}  // namespace bsingular
