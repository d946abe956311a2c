#include "bsingular/harness.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "bsingular/bernstein.hpp"
#include "bsingular/endpoint_modifier.hpp"
#include "bsingular/errors.hpp"
#include "bsingular/fit.hpp"

namespace bsingular {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Pointwise errors below this (relative to ||wf||) are rounding noise.
constexpr double kErrorNoise = 1e-12;

bool interior(double x) { return x > 0.0 && x < 1.0; }

std::vector<double> interior_points(const XGrid& grid) {
  auto xs = grid.points();
  xs.erase(std::remove_if(xs.begin(), xs.end(), [](double x) { return !interior(x); }), xs.end());
  return xs;
}

// sup over the grid of w |f|; endpoint samples only where w does not vanish.
double weighted_norm(const SampledFunction& f, const JacobiWeight& w, const std::vector<double>& xs) {
  double best = 0.0;
  for (double x : xs) {
    const double wx = w(x);
    if (wx == 0.0) continue;
    best = std::max(best, wx * std::abs(f.at(x)));
  }
  return best;
}

// sup over interior grid points of w phi^r |f^{(r)}|.
double weighted_derivative_norm(const SampledFunction& f, const JacobiWeight& w, const StepWeight& phi, int r,
                                const std::vector<double>& xs) {
  double best = 0.0;
  for (double x : xs) {
    if (!interior(x)) continue;
    const double v = w(x) * std::pow(phi(x), r) * std::abs(f.derivative(r, x));
    if (std::isfinite(v)) best = std::max(best, v);
  }
  return best;
}

double safe_ratio(double num, double den) {
  if (den > 0.0) return num / den;
  return num == 0.0 ? 0.0 : kInf;
}

void finish(Check& c) {
  c.empirical_constant = c.values.empty() ? 0.0 : *std::max_element(c.values.begin(), c.values.end());
}

Check make_check(std::string criterion, std::string function, int m) {
  Check c;
  c.criterion = std::move(criterion);
  c.function = std::move(function);
  c.m = m;
  return c;
}

void require_theorem_mode(const SweepSetup& setup) {
  if (!setup.phi.theorem_admissible())
    throw ConfigurationError("theorem mode needs min{β(0),β(1)} ≥ 1/2, got β(0) = " +
                             std::to_string(setup.phi.beta0()) + ", β(1) = " + std::to_string(setup.phi.beta1()));
  if (!(setup.w.alpha() > 0.0 && setup.w.beta() > 0.0))
    throw ConfigurationError("theorem mode needs α > 0 and β > 0");
}

void require_sobolev(const TestFunction& f, const JacobiWeight& w, const StepWeight& phi, int r) {
  if (!f.in_sobolev(w, phi, r))
    throw ConfigurationError("function " + f.name() + " is not in the weighted Sobolev space: ||w φ^r f^(r)|| is infinite");
}

// Grid merged with uniform points in the blend zones (0, 2/n] and [1 - 2/n, 1).
std::vector<double> zone_refined(const std::vector<double>& xs, long n) {
  std::vector<double> out = xs;
  const double zone = 2.0 / static_cast<double>(n);
  for (int j = 1; j <= 64; ++j) {
    out.push_back(zone * j / 64.0);
    out.push_back(1.0 - zone * j / 64.0);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct ModifiedNodes {
  CombinationScheme scheme;
  ModifiedFunction fn;
  std::vector<Eigen::VectorXd> nodes;
};

ModifiedNodes modified_nodes(const SampledFunction& f, long n, int m, Ladder ladder, int r) {
  CombinationScheme scheme = CombinationScheme::make(n, m, ladder);
  ModifiedFunction fn(f, n, r);
  auto nodes = combo_node_values(scheme, fn.as_sampled());
  return {std::move(scheme), std::move(fn), std::move(nodes)};
}

// sup_x w phi^r |B*^{(r)} f| and sup_x w |B*^{(r)} f| for one n.
std::pair<double, double> derivative_sups(const ModifiedNodes& mn, const JacobiWeight& w, const StepWeight& phi,
                                          int r, const std::vector<double>& xs) {
  double weighted = 0.0;
  double plain = 0.0;
  for (double x : xs) {
    const double wx = w(x);
    if (wx == 0.0) continue;
    const double d = std::abs(combo_derivative_nodes(mn.scheme, mn.nodes, r, x));
    weighted = std::max(weighted, wx * std::pow(phi(x), r) * d);
    plain = std::max(plain, wx * d);
  }
  return {weighted, plain};
}

}  // namespace

std::string to_string(Status status) {
  switch (status) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::saturated: return "saturated";
  }
  return "fail";
}

Status status_from_string(const std::string& name) {
  if (name == "pass") return Status::pass;
  if (name == "fail") return Status::fail;
  if (name == "saturated") return Status::saturated;
  throw ConfigurationError("unknown status '" + name + "'");
}

std::vector<double> XGrid::points() const {
  std::vector<double> xs;
  for (int i = 0; i < uniform; ++i) xs.push_back(uniform == 1 ? 0.5 : static_cast<double>(i) / (uniform - 1));
  double scale = 1.0;
  for (int j = 1; j <= geometric; ++j) {
    scale *= 0.5;
    xs.push_back(scale);
    xs.push_back(1.0 - scale);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

nlohmann::json Check::to_json() const {
  nlohmann::json curve_json = nlohmann::json::array();
  for (const auto& [t, v] : curve) curve_json.push_back({t, v});
  return {{"criterion", criterion},
          {"function", function},
          {"m", m},
          {"scale_name", scale_name},
          {"scales", scales},
          {"values", values},
          {"empirical_constant", empirical_constant},
          {"status", to_string(status)},
          {"note", note},
          {"metrics", metrics},
          {"curve", curve_json}};
}

Check Check::from_json(const nlohmann::json& j) {
  Check c;
  c.criterion = j.at("criterion").get<std::string>();
  c.function = j.at("function").get<std::string>();
  c.m = j.at("m").get<int>();
  c.scale_name = j.at("scale_name").get<std::string>();
  c.scales = j.at("scales").get<std::vector<double>>();
  c.values = j.at("values").get<std::vector<double>>();
  c.empirical_constant = j.at("empirical_constant").get<double>();
  c.status = status_from_string(j.at("status").get<std::string>());
  c.note = j.value("note", std::string());
  c.metrics = j.value("metrics", std::map<std::string, double>());
  if (j.contains("curve"))
    for (const auto& p : j.at("curve")) c.curve.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  return c;
}

Status boundedness_status(const std::vector<double>& values, double factor) {
  if (values.empty()) return Status::saturated;
  for (double v : values)
    if (!std::isfinite(v)) return Status::fail;
  if (std::all_of(values.begin(), values.end(), [](double v) { return std::abs(v) <= kSaturationFloor; }))
    return Status::saturated;
  const std::size_t k = values.size();
  double first = 0.0;
  double second = 0.0;
  for (std::size_t i = 0; i < (k + 1) / 2; ++i) first = std::max(first, values[i]);
  for (std::size_t i = k / 2; i < k; ++i) second = std::max(second, values[i]);
  return second <= factor * std::max(first, kSaturationFloor) ? Status::pass : Status::fail;
}

std::vector<Check> verify_bernstein_inequality(const TestFunction& f, const SweepSetup& setup) {
  require_theorem_mode(setup);
  const SampledFunction sampled = f.sampled();
  const auto xs = setup.grid.points();
  const double norm = weighted_norm(sampled, setup.w, xs);
  Check theorem = make_check("theorem1", f.name(), setup.m);
  Check unweighted = make_check("lemma7", f.name(), setup.m);
  for (long n : setup.n_list) {
    const auto mn = modified_nodes(sampled, n, setup.m, setup.ladder, setup.r);
    const auto [weighted, plain] = derivative_sups(mn, setup.w, setup.phi, setup.r, xs);
    const double nn = static_cast<double>(n);
    theorem.scales.push_back(nn);
    theorem.values.push_back(safe_ratio(weighted, std::pow(nn, 0.5 * setup.r) * norm));
    unweighted.scales.push_back(nn);
    unweighted.values.push_back(safe_ratio(plain, std::pow(nn, setup.r) * norm));
  }
  for (Check* c : {&theorem, &unweighted}) {
    c->status = boundedness_status(c->values);
    c->metrics["norm_wf"] = norm;
    finish(*c);
  }
  return {theorem, unweighted};
}

std::vector<Check> verify_smooth_bound(const TestFunction& f, const SweepSetup& setup) {
  require_theorem_mode(setup);
  require_sobolev(f, setup.w, setup.phi, setup.r);
  const int r = setup.r;
  const SampledFunction sampled = f.sampled(r);
  const auto xs = setup.grid.points();
  const double norm = weighted_derivative_norm(sampled, setup.w, setup.phi, r, xs);
  Check theorem = make_check("theorem2", f.name(), setup.m);
  Check modified = make_check("lemma3", f.name(), setup.m);
  Check endpoint = make_check("lemma4", f.name(), setup.m);
  const bool vanishing = norm == 0.0;
  for (long n : setup.n_list) {
    const double nn = static_cast<double>(n);
    const auto mn = modified_nodes(sampled, n, setup.m, setup.ladder, r);
    const double weighted = derivative_sups(mn, setup.w, setup.phi, r, xs).first;
    double fn_norm = 0.0;
    for (double x : zone_refined(xs, n)) {
      if (!interior(x)) continue;
      const double v = setup.w(x) * std::pow(setup.phi(x), r) * std::abs(mn.fn.derivative(r, x));
      fn_norm = std::max(fn_norm, v);
    }
    double lagrange = 0.0;
    const double zone = 2.0 / nn;
    for (int j = 1; j <= 64; ++j) {
      for (const bool left : {true, false}) {
        const double x = left ? zone * j / 64.0 : 1.0 - zone * j / 64.0;
        const double poly = left ? mn.fn.left()(x) : mn.fn.right()(x);
        const double gap = setup.w(x) * std::abs(sampled.at(x) - poly);
        const double bound = std::pow(local_scale(n, setup.phi, x), r) * norm;
        lagrange = std::max(lagrange, safe_ratio(gap, bound));
      }
    }
    for (Check* c : {&theorem, &modified, &endpoint}) c->scales.push_back(nn);
    theorem.values.push_back(vanishing ? 0.0 : weighted / norm);
    modified.values.push_back(vanishing ? 0.0 : fn_norm / norm);
    endpoint.values.push_back(vanishing ? 0.0 : lagrange);
  }
  for (Check* c : {&theorem, &modified, &endpoint}) {
    c->metrics["norm_w_phi_r_f_r"] = norm;
    if (vanishing && f.is_polynomial_below(r)) {
      c->status = Status::saturated;
      c->note = "f^(r) vanishes identically";
    } else {
      c->status = boundedness_status(c->values);
    }
    finish(*c);
  }
  return {theorem, modified, endpoint};
}

Check verify_weighted_boundedness(const TestFunction& f, const SweepSetup& setup) {
  const SampledFunction sampled = f.sampled();
  const auto xs = setup.grid.points();
  const double norm = weighted_norm(sampled, setup.w, xs);
  Check c = make_check("lemma5", f.name(), setup.m);
  for (long n : setup.n_list) {
    const auto mn = modified_nodes(sampled, n, setup.m, setup.ladder, setup.r);
    double sup = 0.0;
    for (double x : xs) {
      const double wx = setup.w(x);
      if (wx == 0.0) continue;
      sup = std::max(sup, wx * std::abs(combo_apply_nodes(mn.scheme, mn.nodes, x)));
    }
    c.scales.push_back(static_cast<double>(n));
    c.values.push_back(safe_ratio(sup, norm));
  }
  finish(c);
  c.metrics["norm_wf"] = norm;
  const double cap = 1.5 * c.values.front();
  c.metrics["cap"] = cap;
  c.status = std::all_of(c.values.begin(), c.values.end(), [&](double v) { return std::isfinite(v) && v <= cap; })
                 ? Status::pass
                 : Status::fail;
  return c;
}

Check verify_direct(const TestFunction& f, const SweepSetup& setup) {
  require_theorem_mode(setup);
  const SampledFunction sampled = f.sampled();
  const auto xs = interior_points(setup.grid);
  Check c = make_check("direct", f.name(), setup.m);
  if (f.is_polynomial_below(setup.r)) {
    double worst = 0.0;
    for (long n : setup.n_list) {
      const auto mn = modified_nodes(sampled, n, setup.m, setup.ladder, setup.r);
      double err = 0.0;
      for (double x : xs) err = std::max(err, setup.w(x) * std::abs(sampled(x) - combo_apply_nodes(mn.scheme, mn.nodes, x)));
      c.scales.push_back(static_cast<double>(n));
      c.values.push_back(0.0);
      worst = std::max(worst, err);
    }
    c.metrics["max_error"] = worst;
    c.status = worst <= kErrorNoise ? Status::saturated : Status::fail;
    c.note = "polynomial of degree below r: errors at rounding level";
    finish(c);
    return c;
  }

  // omega is tabulated once over the range of local scales the sweep needs.
  double s_min = kInf;
  for (long n : setup.n_list)
    for (double x : xs) s_min = std::min(s_min, local_scale(n, setup.phi, x));
  const double t_hi = 1.0 / 6.0;
  const double t_lo = std::min(0.5 * s_min, 0.5 * t_hi);
  constexpr int kCurvePoints = 24;
  std::vector<double> t_grid;
  for (int i = 0; i < kCurvePoints; ++i) t_grid.push_back(t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (kCurvePoints - 1)));
  const ModulusEstimate estimate = estimate_modulus(sampled, setup.w, setup.phi, setup.r, t_grid, setup.resolution);
  const ModulusCurve curve(estimate.t_grid, estimate.values);
  for (std::size_t i = 0; i < t_grid.size(); ++i) c.curve.emplace_back(t_grid[i], estimate.values[i]);

  for (long n : setup.n_list) {
    const auto mn = modified_nodes(sampled, n, setup.m, setup.ladder, setup.r);
    double worst = 0.0;
    for (double x : xs) {
      const double e = setup.w(x) * std::abs(sampled(x) - combo_apply_nodes(mn.scheme, mn.nodes, x));
      const double modulus = curve(local_scale(n, setup.phi, x));
      worst = std::max(worst, safe_ratio(e, modulus));
    }
    c.scales.push_back(static_cast<double>(n));
    c.values.push_back(worst);
  }
  c.status = boundedness_status(c.values);
  c.metrics["t_min"] = t_lo;
  c.metrics["t_max"] = t_hi;
  finish(c);
  return c;
}

Check verify_inverse(const TestFunction& f, const SweepSetup& setup, const InverseSetup& inverse) {
  require_theorem_mode(setup);
  Check c = make_check("inverse", f.name(), setup.m);
  if (f.is_polynomial_below(setup.r)) {
    c.status = Status::saturated;
    c.note = "polynomial of degree below r: error and modulus both vanish";
    return c;
  }
  const SampledFunction sampled = f.sampled();
  const double norm = weighted_norm(sampled, setup.w, setup.grid.points());
  // Fixed points, then the moving points c/n and 1 - c/n that follow an endpoint singularity.
  struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
  };
  std::vector<Series> series;
  for (double x : inverse.x_pool) {
    std::ostringstream label;
    label << "x=" << x;
    series.push_back({label.str(), {}});
  }
  for (double cn : inverse.moving_pool) {
    std::ostringstream left, right;
    left << "x=" << cn << "/n";
    right << "x=1-" << cn << "/n";
    series.push_back({left.str(), {}});
    series.push_back({right.str(), {}});
  }
  for (long n : inverse.n_list) {
    const auto mn = modified_nodes(sampled, n, setup.m, setup.ladder, setup.r);
    const double nn = static_cast<double>(n);
    std::vector<double> xs = inverse.x_pool;
    for (double cn : inverse.moving_pool) {
      xs.push_back(cn / nn);
      xs.push_back(1.0 - cn / nn);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x = xs[i];
      const double e = setup.w(x) * std::abs(sampled(x) - combo_apply_nodes(mn.scheme, mn.nodes, x));
      if (e > kErrorNoise * std::max(norm, 1.0)) series[i].points.emplace_back(local_scale(n, setup.phi, x), e);
    }
  }
  std::vector<std::vector<std::pair<double, double>>> usable;
  double s_min = kInf;
  double s_max = 0.0;
  int saturated_points = 0;
  double weakest = kInf;
  for (const auto& sr : series) {
    if (sr.points.size() < 4) {
      ++saturated_points;
      continue;
    }
    const RateFit own = fit_rate(sr.points);
    c.metrics["a_err@" + sr.label] = own.exponent;
    weakest = std::min(weakest, own.exponent);
    for (const auto& [s, e] : sr.points) {
      s_min = std::min(s_min, s);
      s_max = std::max(s_max, s);
      c.scales.push_back(s);
      c.values.push_back(e);
    }
    usable.push_back(sr.points);
  }
  c.scale_name = "s";
  c.metrics["saturated_x"] = saturated_points;
  if (usable.empty()) throw DegenerateFitError("inverse fit for " + f.name() + ": no x* with 4 usable error samples");
  const RateFit pooled = fit_rate_pooled(usable);
  c.metrics["a_err_pooled"] = pooled.exponent;

  const double t_hi = std::min(s_max, 1.0 / 6.0);
  const double t_lo = std::min(s_min, 0.5 * t_hi);
  std::vector<double> t_grid;
  for (int i = 0; i < inverse.t_samples; ++i)
    t_grid.push_back(t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (inverse.t_samples - 1)));
  const ModulusEstimate estimate = estimate_modulus(sampled, setup.w, setup.phi, setup.r, t_grid, setup.resolution);
  for (std::size_t i = 0; i < t_grid.size(); ++i) c.curve.emplace_back(t_grid[i], estimate.values[i]);
  if (estimate.saturated) throw DegenerateFitError("inverse fit for " + f.name() + ": modulus vanishes");

  c.metrics["a_err"] = weakest;
  c.metrics["a_mod"] = estimate.fitted_exponent;
  c.metrics["a_mod_residual"] = estimate.fit_residual;
  c.metrics["a_mod_samples"] = static_cast<double>(t_grid.size());
  c.metrics["gap"] = std::abs(weakest - estimate.fitted_exponent);
  bool ok = c.metrics["gap"] <= inverse.tolerance;
  if (f.expected_alpha0()) {
    c.metrics["alpha0"] = *f.expected_alpha0();
    c.metrics["alpha0_gap"] = std::abs(estimate.fitted_exponent - *f.expected_alpha0());
    ok = ok && c.metrics["alpha0_gap"] <= inverse.tolerance;
  }
  c.status = ok ? Status::pass : Status::fail;
  c.empirical_constant = c.metrics["gap"];
  return c;
}

Check verify_lemma_negative_moment(double u, double v, const std::vector<long>& n_list, const XGrid& grid) {
  std::ostringstream label;
  label << "u=" << u << ",v=" << v;
  Check c = make_check("lemma1", label.str(), 0);
  const auto xs = interior_points(grid);
  for (long n : n_list) {
    const double nn = static_cast<double>(n);
    double worst = 0.0;
    for (double x : xs) {
      const Eigen::VectorXd row = basis_row(n, x);
      CompensatedSum<double> sum;
      for (long k = 1; k < n; ++k) {
        if (row[k] == 0.0) continue;
        const double node = static_cast<double>(k) / nn;
        sum += std::pow(node, -u) * std::pow(1.0 - node, -v) * row[k];
      }
      worst = std::max(worst, sum.value() * std::pow(x, u) * std::pow(1.0 - x, v));
    }
    c.scales.push_back(nn);
    c.values.push_back(worst);
  }
  c.status = boundedness_status(c.values);
  finish(c);
  return c;
}

Check verify_lemma_absolute_moment(double gamma, const std::vector<long>& n_list, const XGrid& grid) {
  std::ostringstream label;
  label << "gamma=" << gamma;
  Check c = make_check("lemma2", label.str(), 0);
  const auto xs = interior_points(grid);
  for (long n : n_list) {
    const double nn = static_cast<double>(n);
    double worst = 0.0;
    double full_grid = 0.0;
    for (double x : xs) {
      const double bound = std::pow(nn, 0.5 * gamma) * std::pow(std::sqrt(x * (1.0 - x)), gamma);
      const double ratio = absolute_moment(n, gamma, x) / bound;
      full_grid = std::max(full_grid, ratio);
      // For gamma > 2 the ratio grows like (nx)^{1 - gamma/2} once x < 1/n.
      if (gamma <= 2.0 || nn * x * (1.0 - x) >= 1.0) worst = std::max(worst, ratio);
    }
    c.scales.push_back(nn);
    c.values.push_back(worst);
    c.metrics["full_grid_sup@n=" + std::to_string(n)] = full_grid;
  }
  c.status = boundedness_status(c.values);
  finish(c);
  return c;
}

Check verify_lemma_box_integral(const StepWeight& phi, int r, int t_levels, int x_points) {
  if (r < 1 || r > 3) throw DomainError("box integral check supports r = 1, 2, 3");
  using Quadrature = boost::math::quadrature::gauss<double, 32>;
  const auto& abscissa = Quadrature::abscissa();
  const auto& weights = Quadrature::weights();
  // Full symmetric node list on [-1, 1].
  std::vector<double> nodes;
  std::vector<double> node_weights;
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    nodes.push_back(abscissa[i]);
    node_weights.push_back(weights[i]);
    if (abscissa[i] != 0.0) {
      nodes.push_back(-abscissa[i]);
      node_weights.push_back(weights[i]);
    }
  }
  std::ostringstream label;
  label << "r=" << r;
  Check c = make_check("lemma6", label.str(), 0);
  c.scale_name = "t";
  for (int level = 1; level <= t_levels; ++level) {
    const double t = std::ldexp(1.0, -level) / (8.0 * r);
    const double lo = 0.5 * r * t;
    const double hi = 1.0 - 0.5 * r * t;
    std::vector<double> xs;
    for (int i = 1; i < x_points; ++i) xs.push_back(lo + (hi - lo) * i / x_points);
    double scale = 1.0;
    for (int j = 1; j <= 20; ++j) {
      scale *= 0.5;
      xs.push_back(lo + (hi - lo) * scale);
      xs.push_back(hi - (hi - lo) * scale);
    }
    double worst = 0.0;
    for (double x : xs) {
      // Tensor Gauss-Legendre over [-t/2, t/2]^r.
      double integral = 0.0;
      std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
      for (;;) {
        double point = x;
        double weight = 1.0;
        for (int a = 0; a < r; ++a) {
          point += 0.5 * t * nodes[idx[static_cast<std::size_t>(a)]];
          weight *= 0.5 * t * node_weights[idx[static_cast<std::size_t>(a)]];
        }
        integral += weight * std::pow(phi(point), -r);
        int a = 0;
        while (a < r && ++idx[static_cast<std::size_t>(a)] == nodes.size()) idx[static_cast<std::size_t>(a++)] = 0;
        if (a == r) break;
      }
      worst = std::max(worst, integral / (std::pow(t, r) * std::pow(phi(x), -r)));
    }
    c.scales.push_back(t);
    c.values.push_back(worst);
  }
  c.status = boundedness_status(c.values);
  finish(c);
  return c;
}

Check verify_corollary(const TestFunction& f, double lambda, const SweepSetup& setup, CorollaryBranch branch) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigurationError("corollary needs 0 ≤ λ ≤ 1");
  if (!(setup.w.alpha() > 0.0 && setup.w.beta() > 0.0)) throw ConfigurationError("corollary needs α > 0 and β > 0");
  const StepWeight phi = StepWeight::varphi_power(lambda);
  const int r = setup.r;
  bool sobolev = branch == CorollaryBranch::sobolev;
  if (branch == CorollaryBranch::automatic) sobolev = f.in_sobolev(setup.w, phi, r);
  if (sobolev) require_sobolev(f, setup.w, phi, r);
  const SampledFunction sampled = f.sampled(sobolev ? r : 0);
  const auto xs = setup.grid.points();
  std::ostringstream label;
  label << f.name() << " lambda=" << lambda;
  Check c = make_check("corollary", label.str(), setup.m);
  c.metrics["lambda"] = lambda;
  c.metrics["sobolev_branch"] = sobolev ? 1.0 : 0.0;
  const double norm = sobolev ? weighted_derivative_norm(sampled, setup.w, phi, r, xs) : weighted_norm(sampled, setup.w, xs);
  for (long n : setup.n_list) {
    const double nn = static_cast<double>(n);
    const auto mn = modified_nodes(sampled, n, setup.m, setup.ladder, r);
    double worst = 0.0;
    for (double x : xs) {
      const double wx = setup.w(x);
      if (wx == 0.0) continue;
      const double lhs = wx * std::pow(phi(x), r) * std::abs(combo_derivative_nodes(mn.scheme, mn.nodes, r, x));
      double bound = norm;
      if (!sobolev) {
        const double varphi = std::sqrt(x * (1.0 - x));
        const double growth = std::max(std::pow(nn, 0.5 * r * (1.0 - lambda)), std::pow(varphi, r * (lambda - 1.0)));
        bound *= std::pow(nn, 0.5 * r) * growth;
      }
      worst = std::max(worst, safe_ratio(lhs, bound));
    }
    c.scales.push_back(nn);
    c.values.push_back(worst);
  }
  if (sobolev && norm == 0.0 && f.is_polynomial_below(r)) {
    c.status = Status::saturated;
    c.note = "f^(r) vanishes identically";
    std::fill(c.values.begin(), c.values.end(), 0.0);
  } else {
    c.status = boundedness_status(c.values);
  }
  finish(c);
  return c;
}

Check cross_check_combination(const TestFunction& f, const SweepSetup& setup, long n_min) {
  const SampledFunction sampled = f.sampled();
  const auto xs = interior_points(setup.grid);
  Check c = make_check("cross_check", f.name(), 2);
  const auto grid_error = [&](long n, int m) {
    const auto mn = modified_nodes(sampled, n, m, setup.ladder, setup.r);
    double err = 0.0;
    for (double x : xs) err = std::max(err, setup.w(x) * std::abs(sampled(x) - combo_apply_nodes(mn.scheme, mn.nodes, x)));
    return err;
  };
  for (long n : setup.n_list) {
    if (n < n_min) continue;
    c.scales.push_back(static_cast<double>(n));
    c.values.push_back(safe_ratio(grid_error(n, 1), grid_error(n, 2)));
  }
  c.note = "value = single-operator error / two-term error";
  c.status = !c.values.empty() && std::all_of(c.values.begin(), c.values.end(), [](double v) { return v >= 1.0; })
                 ? Status::pass
                 : Status::fail;
  c.empirical_constant = c.values.empty() ? 0.0 : *std::min_element(c.values.begin(), c.values.end());
  return c;
}

Check verify_modulus_consistency(const TestFunction& f, const SweepSetup& setup, const std::vector<double>& t_list,
                                 double tolerance) {
  const SampledFunction sampled = f.sampled();
  const auto& w = setup.w;
  const auto& phi = setup.phi;
  const int r = setup.r;
  const ModulusResolution base = setup.resolution;
  const ModulusResolution fine = base.refined();
  Check c = make_check("modulus", f.name(), 0);
  c.scale_name = "t";
  double floor = 0.0;
  for (double t : t_list) floor = std::max(floor, omega_modulus(sampled, w, phi, r, t, base));
  floor = std::max(floor, 1.0) * 1e-12;

  double worst_change = 0.0;
  bool omega_dominates = true;
  for (double t : t_list) {
    const double values[3][2] = {
        {omega_modulus(sampled, w, phi, r, t, base), omega_modulus(sampled, w, phi, r, t, fine)},
        {main_part_modulus(sampled, w, phi, r, t, 1.0, base), main_part_modulus(sampled, w, phi, r, t, 1.0, fine)},
        {steklov_k_functional(sampled, w, phi, r, t, base), steklov_k_functional(sampled, w, phi, r, t, fine)}};
    double change = 0.0;
    for (const auto& pair : values)
      if (std::max(pair[0], pair[1]) > floor) change = std::max(change, std::abs(pair[1] - pair[0]) / pair[1]);
    if (values[1][0] > values[0][0]) omega_dominates = false;
    c.scales.push_back(t);
    c.values.push_back(change);
    worst_change = std::max(worst_change, change);
  }

  // Consecutive t differ by one h-grid step, so their h-grids overlap in
  // all but one point.
  const double ratio = std::pow(64.0, 1.0 / base.h_samples);
  bool monotone = true;
  double previous = -1.0;
  for (double t = t_list.front(); t <= t_list.back() * (1.0 + 1e-12); t *= ratio) {
    const double v = omega_modulus(sampled, w, phi, r, t, base);
    // decreases below the rounding floor are ties
    if (v < previous - floor) monotone = false;
    previous = std::max(previous, v);
  }

  const auto expr = f.expression();
  const SampledFunction doubled([expr](double t) { return -2.0 * expr(t); });
  const SampledFunction tripled([expr](double t) { return 3.0 * expr(t); });
  double homogeneity_exact = 0.0;
  double homogeneity_scaled = 0.0;
  // rounding level of an r-th difference of 3f
  const double scaled_tolerance = 3.0 * std::ldexp(64.0 * std::numeric_limits<double>::epsilon(), r) *
                                  std::max(weighted_norm(sampled, w, setup.grid.points()), 1.0);
  for (double t : t_list) {
    if (!interior(t)) continue;
    const double v = omega_modulus(sampled, w, phi, r, t, base);
    homogeneity_exact = std::max(homogeneity_exact, std::abs(omega_modulus(doubled, w, phi, r, t, base) - 2.0 * v));
    homogeneity_scaled = std::max(homogeneity_scaled, std::abs(omega_modulus(tripled, w, phi, r, t, base) - 3.0 * v));
  }

  c.metrics["max_refinement_change"] = worst_change;
  c.metrics["monotone"] = monotone ? 1.0 : 0.0;
  c.metrics["omega_dominates_main_part"] = omega_dominates ? 1.0 : 0.0;
  c.metrics["homogeneity_power_of_two"] = homogeneity_exact;
  c.metrics["homogeneity_scaled"] = homogeneity_scaled;
  c.metrics["homogeneity_scaled_tolerance"] = scaled_tolerance;
  const bool ok = worst_change <= tolerance && monotone && omega_dominates && homogeneity_exact == 0.0 &&
                  homogeneity_scaled <= scaled_tolerance;
  const bool flat = floor <= 1e-12 && worst_change == 0.0;
  c.status = ok ? (flat ? Status::saturated : Status::pass) : Status::fail;
  finish(c);
  return c;
}

Check verify_k_equivalence(const TestFunction& f, const SweepSetup& setup, int k_min, int k_max) {
  const SampledFunction sampled = f.sampled();
  Check c = make_check("k_equivalence", f.name(), 0);
  c.scale_name = "t";
  const auto ratio_at = [&](double t) {
    const double omega = main_part_modulus(sampled, setup.w, setup.phi, setup.r, t, 1.0, setup.resolution);
    const double k = steklov_k_functional(sampled, setup.w, setup.phi, setup.r, t, setup.resolution);
    return std::pair{k, omega};
  };
  double coarse_lo = kInf, coarse_hi = 0.0, fine_lo = kInf, fine_hi = 0.0;
  bool vanishing = true;
  for (int half = 2 * k_min; half <= 2 * k_max; ++half) {
    const double t = std::pow(2.0, -0.5 * half);
    const auto [k, omega] = ratio_at(t);
    if (omega > 1e-12) vanishing = false;
    const double ratio = safe_ratio(k, omega);
    c.scales.push_back(t);
    c.values.push_back(ratio);
    fine_lo = std::min(fine_lo, ratio);
    fine_hi = std::max(fine_hi, ratio);
    if (half % 2 == 0) {
      coarse_lo = std::min(coarse_lo, ratio);
      coarse_hi = std::max(coarse_hi, ratio);
    }
  }
  if (vanishing) {
    c.status = Status::saturated;
    c.note = "main-part modulus vanishes";
    return c;
  }
  const double coarse_width = coarse_hi / coarse_lo;
  const double fine_width = fine_hi / fine_lo;
  c.metrics["window_lo"] = fine_lo;
  c.metrics["window_hi"] = fine_hi;
  c.metrics["coarse_width"] = coarse_width;
  c.metrics["refined_width"] = fine_width;
  const bool inside = fine_lo >= 1.0 / 50.0 && fine_hi <= 50.0;
  c.status = inside && std::isfinite(fine_width) && fine_width <= 1.5 * coarse_width ? Status::pass : Status::fail;
  finish(c);
  return c;
}

std::vector<Check> run_checks(const std::vector<std::function<std::vector<Check>()>>& tasks, int threads) {
  std::vector<std::vector<Check>> slots(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        slots[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int count = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Check> out;
  for (auto& s : slots)
    for (auto& c : s) out.push_back(std::move(c));
  return out;
}

}  // namespace bsingular
