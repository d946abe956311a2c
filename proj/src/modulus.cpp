#include "bsingular/modulus.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "bsingular/differences.hpp"
#include "bsingular/errors.hpp"
#include "bsingular/fit.hpp"

namespace bsingular {

namespace {

constexpr double kSaturation = 1e-12;

// Grid points of [a, b]: uniform plus a + (b-a) 2^-j and b - (b-a) 2^-j.
std::vector<double> window_grid(double a, double b, const ModulusResolution& res) {
  std::vector<double> xs;
  if (!(a <= b)) return xs;
  const double len = b - a;
  xs.reserve(static_cast<std::size_t>(res.x_uniform + 1 + 2 * res.x_geometric));
  for (int i = 0; i <= res.x_uniform; ++i) xs.push_back(a + len * i / std::max(res.x_uniform, 1));
  double scale = 1.0;
  for (int j = 1; j <= res.x_geometric; ++j) {
    scale *= 0.5;
    xs.push_back(a + len * scale);
    xs.push_back(b - len * scale);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

template <class G>
double golden_max(const G& g, double lo, double hi, double best) {
  constexpr double ratio = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double gc = g(c);
  double gd = g(d);
  for (int iter = 0; iter < 60 && b - a > 1e-15 * (1.0 + std::abs(a)); ++iter) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - ratio * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + ratio * (b - a);
      gd = g(d);
    }
    best = std::max({best, gc, gd});
  }
  return best;
}

// Grid sup of g on [a, b] followed by golden-section polish around the top
// few grid maxima. Ties resolve by position so the result is deterministic.
template <class G>
double windowed_sup(const G& g, double a, double b, const ModulusResolution& res) {
  const auto xs = window_grid(a, b, res);
  if (xs.empty()) return 0.0;
  std::vector<double> values(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) values[i] = g(xs[i]);
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  const auto top = std::min<std::size_t>(static_cast<std::size_t>(std::max(res.polish, 0)), order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                    [&](std::size_t l, std::size_t r) { return values[l] > values[r] || (values[l] == values[r] && l < r); });
  double best = *std::max_element(values.begin(), values.end());
  if (best == 0.0) return 0.0;
  for (std::size_t q = 0; q < top; ++q) {
    const std::size_t i = order[q];
    const double lo = xs[i == 0 ? 0 : i - 1];
    const double hi = xs[std::min(i + 1, xs.size() - 1)];
    if (hi > lo) best = golden_max(g, lo, hi, best);
  }
  return best;
}

std::vector<double> h_grid(double t, int samples) {
  std::vector<double> hs;
  hs.reserve(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) hs.push_back(t * std::pow(64.0, -static_cast<double>(j) / samples));
  return hs;
}

void check_arguments(int r, double t) {
  if (r < 1) throw DomainError("modulus order must be at least 1");
  if (!(t > 0.0)) throw DomainError("modulus scale t must be positive");
}

// sup over [a, b] of w |Delta^r_{h phi} f|, skipping points whose stencil leaves [0, 1].
double central_sup(const SampledFunction& f, const JacobiWeight& w, const StepWeight& phi, int r, double h,
                   double a, double b, const ModulusResolution& res) {
  const auto g = [&](double x) {
    const double wx = w(x);
    if (wx == 0.0) return 0.0;
    const double reach = 0.5 * r * h * phi(x);
    if (x - reach < 0.0 || x + reach > 1.0) return 0.0;
    return wx * std::abs(diff_central(f, h, phi, r, x));
  };
  return windowed_sup(g, a, b, res);
}

double central_step_difference(const SampledFunction& f, double step, int r, double x) {
  double sum = 0.0;
  for (int k = 0; k <= r; ++k) {
    const double term = detail::binomial_coefficient(r, k) * f.at(x + (0.5 * r - k) * step);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

// Centered cardinal B-spline of order r, supported on [-r/2, r/2].
double centered_bspline(int r, double u) {
  if (std::abs(u) > 0.5 * r) return 0.0;
  if (r == 1) return 1.0;
  double sum = 0.0;
  double factorial = 1.0;
  for (int i = 2; i < r; ++i) factorial *= i;
  for (int k = 0; k <= r; ++k) {
    const double s = u + 0.5 * r - k;
    if (s <= 0.0) continue;
    const double term = detail::binomial_coefficient(r, k) * std::pow(s, r - 1);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum / factorial;
}

}  // namespace

double one_sided_step(const StepWeight& phi, double h) { return h * phi(16.0 * h * h); }

ModulusParts modulus_parts(const SampledFunction& f, const JacobiWeight& w, const StepWeight& phi, int r,
                           double h, const ModulusResolution& res) {
  check_arguments(r, h);
  const double edge = 16.0 * h * h;
  const double s = one_sided_step(phi, h);
  ModulusParts parts;
  parts.central = central_sup(f, w, phi, r, h, edge, 1.0 - edge, res);
  const auto forward = [&](double x) {
    const double wx = w(x);
    if (wx == 0.0) return 0.0;
    return wx * std::abs(diff_forward(f, s, r, x));
  };
  const auto backward = [&](double x) {
    const double wx = w(x);
    if (wx == 0.0) return 0.0;
    return wx * std::abs(diff_backward(f, s, r, x));
  };
  parts.forward = windowed_sup(forward, 0.0, std::min(edge, 1.0 - r * s), res);
  parts.backward = windowed_sup(backward, std::max(1.0 - edge, r * s), 1.0, res);
  return parts;
}

double omega_modulus(const SampledFunction& f, const JacobiWeight& w, const StepWeight& phi, int r, double t,
                     const ModulusResolution& res) {
  check_arguments(r, t);
  double best = 0.0;
  for (double h : h_grid(t, res.h_samples)) best = std::max(best, modulus_parts(f, w, phi, r, h, res).total());
  return best;
}

double main_part_modulus(const SampledFunction& f, const JacobiWeight& w, const StepWeight& phi, int r, double t,
                         double C, const ModulusResolution& res) {
  check_arguments(r, t);
  if (!(C >= 0.0)) throw DomainError("main-part constant C must be non-negative");
  double best = 0.0;
  for (double h : h_grid(t, res.h_samples)) {
    const double edge = C * 16.0 * h * h;
    best = std::max(best, central_sup(f, w, phi, r, h, edge, 1.0 - edge, res));
  }
  return best;
}

double steklov_k_functional(const SampledFunction& f, const JacobiWeight& w, const StepWeight& phi, int r,
                            double t, const ModulusResolution& res) {
  check_arguments(r, t);
  using Quadrature = boost::math::quadrature::gauss<double, 32>;
  const double edge = 16.0 * t * t;
  const auto inside = [&](double x, double tau) { return x - 0.5 * r * tau >= 0.0 && x + 0.5 * r * tau <= 1.0; };

  // f - g = (-1)^r E[fwd-Delta^r_{tau W} f(x)], W with density r M_r(r w) on [-1/2, 1/2].
  const auto residual = [&](double x) {
    const double wx = w(x);
    if (wx == 0.0) return 0.0;
    const double tau = t * phi(x);
    if (!inside(x, tau)) return 0.0;
    const auto integrand = [&](double v) {
      double diff = 0.0;
      for (int k = 0; k <= r; ++k) {
        const double term = detail::binomial_coefficient(r, k) * f.at(x + k * tau * v);
        diff += (k % 2 == 0) ? term : -term;
      }
      return diff * r * centered_bspline(r, r * v);
    };
    double total = 0.0;
    for (int piece = 0; piece < r; ++piece) {
      const double lo = -0.5 + static_cast<double>(piece) / r;
      const double hi = -0.5 + static_cast<double>(piece + 1) / r;
      total += Quadrature::integrate(integrand, lo, hi);
    }
    return wx * std::abs(total);
  };

  // t^r phi^r g^{(r)} = sum_k (-1)^{k+1} C(r,k) (r/k)^r Delta^r_{k tau / r} f.
  const auto smooth_part = [&](double x) {
    const double wx = w(x);
    if (wx == 0.0) return 0.0;
    const double tau = t * phi(x);
    if (!inside(x, tau)) return 0.0;
    double sum = 0.0;
    for (int k = 1; k <= r; ++k) {
      const double term = detail::binomial_coefficient(r, k) * std::pow(static_cast<double>(r) / k, r) *
                          central_step_difference(f, k * tau / r, r, x);
      sum += (k % 2 == 1) ? term : -term;
    }
    return wx * std::abs(sum);
  };

  return windowed_sup(residual, edge, 1.0 - edge, res) + windowed_sup(smooth_part, edge, 1.0 - edge, res);
}

nlohmann::json ModulusEstimate::to_json() const {
  nlohmann::json j = {{"t", t_grid},
                      {"omega", values},
                      {"h_samples_per_t", h_samples_per_t},
                      {"x_grid_size", x_grid_size},
                      {"saturated", saturated}};
  if (saturated) {
    j["fitted_exponent"] = nullptr;
    j["fit_residual"] = nullptr;
  } else {
    j["fitted_exponent"] = fitted_exponent;
    j["fit_residual"] = fit_residual;
  }
  return j;
}

std::string ModulusEstimate::to_csv() const {
  std::ostringstream out;
  out << std::setprecision(17) << "t,omega\n";
  for (std::size_t i = 0; i < t_grid.size(); ++i) out << t_grid[i] << ',' << values[i] << '\n';
  return out.str();
}

ModulusEstimate estimate_modulus(const SampledFunction& f, const JacobiWeight& w, const StepWeight& phi, int r,
                                 const std::vector<double>& t_grid, const ModulusResolution& res) {
  if (t_grid.empty()) throw DomainError("modulus estimate needs a non-empty t-grid");
  if (!std::is_sorted(t_grid.begin(), t_grid.end()))
    throw DomainError("modulus t-grid must be increasing");
  ModulusEstimate estimate;
  estimate.t_grid = t_grid;
  estimate.h_samples_per_t = res.h_samples;
  estimate.x_grid_size = res.x_uniform + 1 + 2 * res.x_geometric;
  estimate.values.reserve(t_grid.size());
  for (double t : t_grid) estimate.values.push_back(omega_modulus(f, w, phi, r, t, res));
  // The h-grids for different t are not nested; enforce the monotone envelope.
  for (std::size_t i = 1; i < estimate.values.size(); ++i)
    estimate.values[i] = std::max(estimate.values[i], estimate.values[i - 1]);
  const double peak = estimate.values.empty() ? 0.0 : estimate.values.back();
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    if (estimate.values[i] > kSaturation * std::max(1.0, peak)) pairs.emplace_back(t_grid[i], estimate.values[i]);
  if (pairs.size() < 4) {
    estimate.saturated = true;
    return estimate;
  }
  const RateFit fit = fit_rate(pairs);
  estimate.fitted_exponent = fit.exponent;
  estimate.fit_residual = fit.residual;
  return estimate;
}

ModulusCurve::ModulusCurve(std::vector<double> t_grid, std::vector<double> values)
    : t_(std::move(t_grid)), values_(std::move(values)) {
  if (t_.empty() || t_.size() != values_.size()) throw DomainError("modulus curve needs matching non-empty grids");
  for (std::size_t i = 1; i < t_.size(); ++i) {
    if (!(t_[i] > t_[i - 1])) throw DomainError("modulus curve t-grid must be strictly increasing");
    values_[i] = std::max(values_[i], values_[i - 1]);
  }
}

double ModulusCurve::operator()(double t) const {
  if (t <= t_.front()) return values_.front();
  if (t >= t_.back()) return values_.back();
  const auto upper = std::upper_bound(t_.begin(), t_.end(), t);
  const std::size_t i = static_cast<std::size_t>(upper - t_.begin());
  const double t0 = t_[i - 1];
  const double t1 = t_[i];
  const double v0 = values_[i - 1];
  const double v1 = values_[i];
  if (v0 > 0.0 && v1 > 0.0) {
    const double s = std::log(t / t0) / std::log(t1 / t0);
    return std::exp(std::log(v0) + s * std::log(v1 / v0));
  }
  return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

}  // namespace bsingular
