#pragma once

// Grid estimators for the weighted Ditzian-Totik modulus
//
//   omega(f, t) = sup_{0<h<=t} { ||w Delta^r_{h phi} f||_[16h^2, 1-16h^2]
//                              + ||w fwd-Delta^r_{s(h)} f||_[0, 16h^2]
//                              + ||w bwd-Delta^r_{s(h)} f||_[1-16h^2, 1] }
//
// with one-sided step s(h) = h phi(16 h^2), the main-part modulus (central
// window only) and a Steklov-mean upper proxy for the K-functional.
//
// Every sup-norm is taken on a grid (uniform points plus points clustered
// geometrically at both window ends) followed by a golden-section polish of
// the best few grid maxima, so estimates approach the true value from below
// as the resolution grows.

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

#include "bsingular/sampled_function.hpp"
#include "bsingular/weights.hpp"

namespace bsingular {

struct ModulusResolution {
  int h_samples = 64;     // geometric h-grid on (t/64, t]
  int x_uniform = 256;    // uniform points per window
  int x_geometric = 40;   // clustered points at each window end
  int polish = 4;         // grid maxima refined by golden section

  /// Twice as many samples of every kind.
  ModulusResolution refined() const { return {2 * h_samples, 2 * x_uniform, 2 * x_geometric, polish}; }

  bool operator==(const ModulusResolution&) const = default;
};

/// One-sided difference step used in the endpoint windows.
double one_sided_step(const StepWeight& phi, double h);

struct ModulusParts {
  double central = 0.0;
  double forward = 0.0;
  double backward = 0.0;
  double total() const { return central + forward + backward; }
};

/// The three windowed weighted sup-norms for a single step h.
ModulusParts modulus_parts(const SampledFunction& f, const JacobiWeight& w, const StepWeight& phi, int r,
                           double h, const ModulusResolution& res = {});

/// omega_phi^r(f, t)_w.
double omega_modulus(const SampledFunction& f, const JacobiWeight& w, const StepWeight& phi, int r, double t,
                     const ModulusResolution& res = {});

/// Omega_phi^r(C, f, t)_w: central differences on [C 16h^2, 1 - C 16h^2] only.
double main_part_modulus(const SampledFunction& f, const JacobiWeight& w, const StepWeight& phi, int r, double t,
                         double C = 1.0, const ModulusResolution& res = {});

/// ||w (f - g)|| + t^r ||w phi^r g^{(r)}|| on [16t^2, 1 - 16t^2] for the
/// polynomial-reproducing r-fold Steklov mean g with local radius t phi(x).
double steklov_k_functional(const SampledFunction& f, const JacobiWeight& w, const StepWeight& phi, int r,
                            double t, const ModulusResolution& res = {});

/// Values of omega on a t-grid with a log-log rate fit.
struct ModulusEstimate {
  std::vector<double> t_grid;
  std::vector<double> values;
  int h_samples_per_t = 0;
  int x_grid_size = 0;
  double fitted_exponent = 0.0;
  double fit_residual = 0.0;
  bool saturated = false;  // every value at rounding level; no fit

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

ModulusEstimate estimate_modulus(const SampledFunction& f, const JacobiWeight& w, const StepWeight& phi, int r,
                                 const std::vector<double>& t_grid, const ModulusResolution& res = {});

/// omega as a function of t by monotone piecewise-linear interpolation in
/// log-log coordinates over a precomputed estimate. Outside the tabulated
/// range the end values are held.
class ModulusCurve {
 public:
  ModulusCurve(std::vector<double> t_grid, std::vector<double> values);

  double operator()(double t) const;
  double t_min() const { return t_.front(); }
  double t_max() const { return t_.back(); }

 private:
  std::vector<double> t_;
  std::vector<double> values_;
};

}  // namespace bsingular
