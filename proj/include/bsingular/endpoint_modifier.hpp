#pragma once

// Endpoint modification of a function singular at 0 or 1.
//
//   F_n = L_r                              on [0, 1/n]
//   F_n = f + psi(nx - 1) (L_r - f)        on (1/n, 2/n)
//   F_n = f                                on [2/n, 1 - 2/n]
// and the mirror image with R_r on the right. L_r interpolates f at
// 1/n, ..., r/n and R_r at 1 - 1/n, ..., 1 - r/n; psi is a smoothstep that
// falls from 1 at t <= 0 to 0 at t >= 1 with r vanishing derivatives at
// both ends.

#include <Eigen/Core>

#include <memory>
#include <vector>

#include "bsingular/combination.hpp"
#include "bsingular/sampled_function.hpp"

namespace bsingular {

/// Cutoff psi of the given smoothness order; `derivative` selects d^j/dt^j.
double cutoff_psi(double t, int order, int derivative = 0);

/// Polynomial through f at the nodes side(i/n), i = 1..r, where side is the
/// identity on the left and x -> 1 - x on the right. Values use the first
/// barycentric form, which stays accurate when extrapolating to the endpoint.
class EndpointInterpolant {
 public:
  enum class Side { left, right };

  EndpointInterpolant(const SampledFunction& f, long n, int r, Side side);

  double operator()(double x) const;
  /// d^order/dx^order, from the monomial expansion in u = n x (or n (1-x)).
  double derivative(int order, double x) const;

  const std::vector<double>& node_values() const { return values_; }

 private:
  double local(double x) const;

  long n_;
  int r_;
  Side side_;
  std::vector<double> values_;
  std::vector<double> weights_;
  Eigen::VectorXd monomial_;
};

/// L_r(f, x) at nodes 1/n, ..., r/n.
double lagrange_left(const SampledFunction& f, long n, int r, double x);
/// R_r(f, x) at nodes 1 - 1/n, ..., 1 - r/n.
double lagrange_right(const SampledFunction& f, long n, int r, double x);

/// F_n as an immutable value; cheap to copy.
class ModifiedFunction {
 public:
  /// Requires 2r/n < 1.
  ModifiedFunction(SampledFunction f, long n, int r);

  long degree() const { return state_->n; }
  int order() const { return state_->r; }

  double operator()(double x) const;
  /// Exact derivative by the Leibniz rule in the blend zones; needs the
  /// corresponding derivatives of f outside [0, 1/n] and [1 - 1/n, 1].
  double derivative(int order, double x) const;

  const EndpointInterpolant& left() const { return state_->left; }
  const EndpointInterpolant& right() const { return state_->right; }

  /// F_n as a sampled function, finite on all of [0, 1], carrying as many
  /// derivatives as f supplies.
  SampledFunction as_sampled() const;

 private:
  struct State {
    SampledFunction f;
    long n;
    int r;
    EndpointInterpolant left;
    EndpointInterpolant right;
  };
  std::shared_ptr<const State> state_;
};

ModifiedFunction modified_function(const SampledFunction& f, long n, int r);

/// B*(f, x) = B_{n,m}(F_n, x) with one F_n built at the base degree n = n_0.
double bstar_apply(const CombinationScheme& scheme, const SampledFunction& f, int r, double x);
double bstar_derivative(const CombinationScheme& scheme, const SampledFunction& f, int r_mod, long r_deriv,
                        double x);

}  // namespace bsingular
